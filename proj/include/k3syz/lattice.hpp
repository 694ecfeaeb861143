#pragma once

#include <gmpxx.h>

#include <vector>

namespace k3syz {

// Even symmetric bilinear form modeling the Néron–Severi lattice of a K3
// surface, together with a chosen polarization class of positive square.
struct IntersectionLattice {
    std::vector<std::vector<mpz_class>> gram;
    std::vector<mpz_class> polarization;

    int rank() const { return static_cast<int>(gram.size()); }
    mpz_class pairing(const std::vector<mpz_class>& u, const std::vector<mpz_class>& v) const;

    // Throws BadInput unless gram is square and symmetric with even diagonal
    // and the polarization has positive self-intersection.
    void validate() const;
};

// Discrete invariants (r, c1, c2) of a sheaf class; chi is derived, not stored.
struct SheafInvariants {
    mpz_class rank;
    std::vector<mpz_class> c1;
    mpz_class c2;

    void validate(const IntersectionLattice& lat) const;
};

struct DoublingReport {
    mpz_class base_dim;
    mpz_class fiber_dim;
    mpz_class target_dim;
    bool holds = false;
};

mpz_class c1_square(const SheafInvariants& inv, const IntersectionLattice& lat);

// chi(E) = 2r + c1^2/2 - c2 (Riemann-Roch on a K3).
mpz_class euler_characteristic(const SheafInvariants& inv, const IntersectionLattice& lat);

// chi(E* ⊗ E) = 2r·chi(E) - c1^2 - 2r^2.
mpz_class chi_end(const SheafInvariants& inv, const IntersectionLattice& lat);

// dim Spl(r;c1,c2) = -2r^2 + (1-r)c1^2 + 2rc2 + 2. Computed by both this
// closed form and 2 - chi_end; throws InternalInconsistency if they differ.
mpz_class spl_dim(const SheafInvariants& inv, const IntersectionLattice& lat);

// Syzygy bundle of (F, W) with dim W = w: (w - r, -c1, c1^2 - c2).
// Requires r + 2 <= w <= chi(F) unless `formal`; throws WNotInRange.
SheafInvariants syzygy_transform(const SheafInvariants& inv, const IntersectionLattice& lat,
                                 const mpz_class& w, bool formal = false);

// Extension of F by v trivial summands: (r + v, c1, c2).
// Requires 1 <= v <= -chi(F) unless `formal`; throws VNotInRange.
SheafInvariants extension_transform(const SheafInvariants& inv, const IntersectionLattice& lat,
                                    const mpz_class& v, bool formal = false);

// dim Gr(w, chi(F)) = w(chi - w), the fiber of the syzygy Grassmann bundle.
mpz_class syzygy_fiber_dim(const SheafInvariants& inv, const IntersectionLattice& lat,
                           const mpz_class& w, bool formal = false);

// v(u - v) with u = -chi(F) = dim H^1(F*).
mpz_class extension_fiber_dim(const SheafInvariants& inv, const IntersectionLattice& lat,
                              const mpz_class& v, bool formal = false);

// dim Spl of the syzygy bundle must equal dim Spl(F) + 2·dim Gr(w, chi(F)).
DoublingReport doubling_check_syzygy(const SheafInvariants& inv, const IntersectionLattice& lat,
                                     const mpz_class& w, bool formal = false);

DoublingReport doubling_check_extension(const SheafInvariants& inv, const IntersectionLattice& lat,
                                        const mpz_class& v, bool formal = false);

// mu_L = (c1 · L) / r as an exact rational.
mpq_class slope(const SheafInvariants& inv, const IntersectionLattice& lat);

}  // namespace k3syz
