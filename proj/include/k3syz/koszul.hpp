#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "k3syz/graded_ring.hpp"
#include "k3syz/linalg.hpp"

namespace k3syz {

// Ordered list of w >= 3 linearly independent degree-a forms spanning
// W ⊂ H^0(O_X(a)) = R_a.
struct FormSpace {
    int degree = 0;
    std::vector<Form> forms;

    int w() const { return static_cast<int>(forms.size()); }
};

// Validated form space bound to a ring, with per-(form, twist) caches of
// multiplication matrices. Thread-safe under the same construct-once
// contract as the graded piece cache.
class FormSpaceContext {
public:
    // Throws BadInput (w < 3 or degree mismatch), ZeroFormError, or
    // DependentForms (forms dependent modulo f).
    FormSpaceContext(std::shared_ptr<const GradedRing> ring, FormSpace space);

    const GradedRing& ring() const { return *ring_; }
    std::shared_ptr<const GradedRing> ring_ptr() const { return ring_; }
    const FormSpace& space() const { return space_; }
    int w() const { return space_.w(); }
    int degree() const { return space_.degree; }

    std::shared_ptr<const SparseMatQ> mult(int form_index, int t) const;

private:
    std::shared_ptr<const GradedRing> ring_;
    FormSpace space_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>,
                     std::shared_future<std::shared_ptr<const SparseMatQ>>>
        cache_;
};

// Koszul differential ∧^q W ⊗ R_t -> ∧^{q-1} W ⊗ R_{t+a}. Blocks are indexed
// by colex-ordered subsets; block (I \ {i_j}, I) is (-1)^{j-1} times the
// multiplication matrix of forms[i_j], stored once per form and shared.
struct KoszulMap {
    int q = 0;
    int t = 0;
    int w = 0;
    int a = 0;
    long source_dim = 0;
    long target_dim = 0;
    long block_rows = 0;  // graded_dim(t+a)
    long block_cols = 0;  // graded_dim(t)
    std::vector<std::shared_ptr<const SparseMatQ>> mult;  // one per form

    MatFp assemble_mod(fp::Elt p, bool transposed = false) const;
    MatQ assemble_exact(bool transposed = false) const;

    // CSC view mod p, for sparse composition and export-sized instances
    std::vector<std::vector<std::pair<long, fp::Elt>>> sparse_columns_mod(fp::Elt p) const;
};

// Requires 1 <= q <= w and t >= 0.
KoszulMap koszul_matrix(const FormSpaceContext& ctx, int q, int t);

enum class RankMode { ModularFirst, ExactOnly };

struct RankBackend {
    RankMode mode = RankMode::ModularFirst;
    fp::Elt prime = fp::kDefaultPrime;
};

enum class Provenance { PrimeCertified, RationalCertified };

const char* to_string(Provenance p);

struct KernelResult {
    long source_dim = 0;
    long target_dim = 0;
    long rank = 0;
    long kernel_dim = 0;
    Provenance provenance = Provenance::PrimeCertified;
    fp::Elt prime = 0;  // prime actually used; 0 on the pure rational path
};

// Kernel dimension of the map. Modular rank is a lower bound for the exact
// rank, so a zero modular kernel is already exact; a nonzero modular kernel
// is confirmed by fraction-free elimination over Q.
KernelResult kernel_dimension(const KoszulMap& map, const RankBackend& backend = {});

// dim ker(∧^q W ⊗ R_t -> ∧^{q-1} W ⊗ R_{t+a}); equals h^0(∧^q S(t)) for the
// syzygy bundle S of (O_X(a), W) when W is base-point free.
KernelResult h0_wedge_syzygy(const FormSpaceContext& ctx, int q, int t,
                             const RankBackend& backend = {});

// h^0(S^*(t)) = w·dim R_t - dim R_{t-a} for the syzygy bundle of a degree-a
// line bundle on a hypersurface K3 (all twists of O_X have vanishing h^1).
long h0_s_dual_linebundle(const GradedRing& ring, int a, int w, int t);

struct BasepointCheck {
    bool certified = false;
    int degree = -1;     // certifying degree when certified
    int max_degree = 0;  // search bound used
};

// Certified when, for some D <= max_degree, the forms of W generate R_D
// from R_{D-a}; then they have no common zero on X. Never claims a base
// point exists. max_degree < 0 selects the default bound max(w*a, 3a+d-3).
BasepointCheck basepoint_check(const FormSpaceContext& ctx, int max_degree = -1,
                               fp::Elt prime = fp::kDefaultPrime);

}  // namespace k3syz
