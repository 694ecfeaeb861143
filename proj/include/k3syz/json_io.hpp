#pragma once

#include <json.hpp>

#include "k3syz/lattice.hpp"
#include "k3syz/stability.hpp"

namespace k3syz::io {

// insertion-ordered so that identical inputs serialize byte-identically
using json = nlohmann::ordered_json;

json mpz_to_json(const mpz_class& z);
mpz_class mpz_from_json(const json& j, const std::string& what);
json mpq_to_json(const mpq_class& q);

// {"gram": [[...]], "polarization": [...], "rank": r, "c1": [...], "c2": n}
IntersectionLattice lattice_from_json(const json& j);
SheafInvariants invariants_from_json(const json& j);
json invariants_to_json(const SheafInvariants& inv);

// {"variables": ["x","y","z","t"], "hypersurface": "..."}
std::shared_ptr<GradedRing> ring_from_json(const json& j);

// {"degree": a, "forms": ["...", ...]}; an optional "rank" other than 1 is
// rejected with UnsupportedRank (only line-bundle syzygy spaces here).
FormSpace form_space_from_json(const json& j, const VariableNames& vars);

json form_space_to_json(const FormSpace& fs, const VariableNames& vars);
json surface_to_json(const GradedRing& ring);
json kernel_result_to_json(const KernelResult& k);
json basepoint_to_json(const BasepointCheck& b);
json schedule_to_json(const TwistSchedule& s);
json certificate_to_json(const StabilityCertificate& cert, const GradedRing& ring,
                         const FormSpace& fs);
json doubling_to_json(const DoublingReport& rep);

// dense export of a sparse matrix as rows of {"num","den"}
json sparse_matq_to_json(const SparseMatQ& m);
json koszul_matrix_to_json(const KoszulMap& map);

json load_json_file(const std::string& path);  // "-" reads stdin

}  // namespace k3syz::io
