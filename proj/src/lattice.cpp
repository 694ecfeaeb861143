#include "k3syz/lattice.hpp"

#include "k3syz/errors.hpp"

namespace k3syz {

mpz_class IntersectionLattice::pairing(const std::vector<mpz_class>& u,
                                       const std::vector<mpz_class>& v) const {
    mpz_class acc = 0;
    for (size_t i = 0; i < gram.size(); ++i)
        for (size_t j = 0; j < gram.size(); ++j) acc += u[i] * gram[i][j] * v[j];
    return acc;
}

void IntersectionLattice::validate() const {
    size_t n = gram.size();
    if (n == 0) throw BadInput("gram matrix is empty");
    for (const auto& row : gram)
        if (row.size() != n) throw BadInput("gram matrix is not square");
    for (size_t i = 0; i < n; ++i) {
        if (gram[i][i] % 2 != 0)
            throw BadInput("gram diagonal entry at " + std::to_string(i) +
                           " is odd; K3 lattices are even");
        for (size_t j = i + 1; j < n; ++j)
            if (gram[i][j] != gram[j][i]) throw BadInput("gram matrix is not symmetric");
    }
    if (polarization.size() != n)
        throw BadInput("polarization length does not match the lattice rank");
    if (pairing(polarization, polarization) <= 0)
        throw BadInput("polarization must have positive self-intersection");
}

void SheafInvariants::validate(const IntersectionLattice& lat) const {
    if (rank < 1) throw BadInput("sheaf rank must be >= 1");
    if (c1.size() != lat.gram.size())
        throw BadInput("c1 length does not match the lattice rank");
    if (lat.pairing(c1, c1) % 2 != 0)
        throw InternalInconsistency("c1^2 is odd on an even lattice");
}

mpz_class c1_square(const SheafInvariants& inv, const IntersectionLattice& lat) {
    return lat.pairing(inv.c1, inv.c1);
}

mpz_class euler_characteristic(const SheafInvariants& inv, const IntersectionLattice& lat) {
    return 2 * inv.rank + c1_square(inv, lat) / 2 - inv.c2;
}

mpz_class chi_end(const SheafInvariants& inv, const IntersectionLattice& lat) {
    const mpz_class& r = inv.rank;
    return 2 * r * euler_characteristic(inv, lat) - c1_square(inv, lat) - 2 * r * r;
}

mpz_class spl_dim(const SheafInvariants& inv, const IntersectionLattice& lat) {
    const mpz_class& r = inv.rank;
    mpz_class direct = -2 * r * r + (1 - r) * c1_square(inv, lat) + 2 * r * inv.c2 + 2;
    mpz_class via_chi = 2 - chi_end(inv, lat);
    if (direct != via_chi)
        throw InternalInconsistency("spl_dim routes disagree: " + direct.get_str() + " vs " +
                                    via_chi.get_str());
    return direct;
}

namespace {

void require_w(const SheafInvariants& inv, const IntersectionLattice& lat, const mpz_class& w,
               bool formal) {
    if (formal) return;
    mpz_class lo = inv.rank + 2;
    mpz_class hi = euler_characteristic(inv, lat);
    if (w < lo || w > hi)
        throw WNotInRange("w = " + w.get_str() + " outside the valid interval [" + lo.get_str() +
                          ", " + hi.get_str() + "]");
}

void require_v(const SheafInvariants& inv, const IntersectionLattice& lat, const mpz_class& v,
               bool formal) {
    if (formal) return;
    mpz_class u = -euler_characteristic(inv, lat);
    if (v < 1 || v > u)
        throw VNotInRange("v = " + v.get_str() + " outside the valid interval [1, " + u.get_str() +
                          "]");
}

}  // namespace

SheafInvariants syzygy_transform(const SheafInvariants& inv, const IntersectionLattice& lat,
                                 const mpz_class& w, bool formal) {
    require_w(inv, lat, w, formal);
    SheafInvariants out;
    out.rank = w - inv.rank;
    out.c1.reserve(inv.c1.size());
    for (const auto& c : inv.c1) out.c1.push_back(-c);
    out.c2 = c1_square(inv, lat) - inv.c2;
    return out;
}

SheafInvariants extension_transform(const SheafInvariants& inv, const IntersectionLattice& lat,
                                    const mpz_class& v, bool formal) {
    require_v(inv, lat, v, formal);
    return SheafInvariants{inv.rank + v, inv.c1, inv.c2};
}

mpz_class syzygy_fiber_dim(const SheafInvariants& inv, const IntersectionLattice& lat,
                           const mpz_class& w, bool formal) {
    require_w(inv, lat, w, formal);
    return w * (euler_characteristic(inv, lat) - w);
}

mpz_class extension_fiber_dim(const SheafInvariants& inv, const IntersectionLattice& lat,
                              const mpz_class& v, bool formal) {
    require_v(inv, lat, v, formal);
    mpz_class u = -euler_characteristic(inv, lat);
    return v * (u - v);
}

DoublingReport doubling_check_syzygy(const SheafInvariants& inv, const IntersectionLattice& lat,
                                     const mpz_class& w, bool formal) {
    DoublingReport rep;
    rep.base_dim = spl_dim(inv, lat);
    rep.fiber_dim = syzygy_fiber_dim(inv, lat, w, formal);
    rep.target_dim = spl_dim(syzygy_transform(inv, lat, w, formal), lat);
    rep.holds = rep.target_dim == rep.base_dim + 2 * rep.fiber_dim;
    return rep;
}

DoublingReport doubling_check_extension(const SheafInvariants& inv, const IntersectionLattice& lat,
                                        const mpz_class& v, bool formal) {
    DoublingReport rep;
    rep.base_dim = spl_dim(inv, lat);
    rep.fiber_dim = extension_fiber_dim(inv, lat, v, formal);
    rep.target_dim = spl_dim(extension_transform(inv, lat, v, formal), lat);
    rep.holds = rep.target_dim == rep.base_dim + 2 * rep.fiber_dim;
    return rep;
}

mpq_class slope(const SheafInvariants& inv, const IntersectionLattice& lat) {
    mpq_class mu(lat.pairing(inv.c1, lat.polarization), inv.rank);
    mu.canonicalize();
    return mu;
}

}  // namespace k3syz
