#include "k3syz/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "k3syz/errors.hpp"
#include "k3syz/parser.hpp"

namespace k3syz::io {

json mpz_to_json(const mpz_class& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());  // decimal string for values beyond int64
}

mpz_class mpz_from_json(const json& j, const std::string& what) {
    if (j.is_number_integer() || j.is_number_unsigned())
        return mpz_class(j.dump(), 10);  // decimal digits, exact at any size
    if (j.is_string()) {
        try {
            return mpz_class(j.get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
            throw BadInput(what + ": not an integer string");
        }
    }
    throw BadInput(what + ": expected an exact integer");
}

json mpq_to_json(const mpq_class& q) {
    return json{{"num", mpz_to_json(q.get_num())}, {"den", mpz_to_json(q.get_den())}};
}

namespace {

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw BadInput(std::string("missing field \"") + name + "\"");
    return *it;
}

std::vector<mpz_class> int_vector(const json& j, const std::string& what) {
    if (!j.is_array()) throw BadInput(what + ": expected an array");
    std::vector<mpz_class> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(mpz_from_json(e, what));
    return out;
}

}  // namespace

IntersectionLattice lattice_from_json(const json& j) {
    IntersectionLattice lat;
    const json& gram = field(j, "gram");
    if (!gram.is_array() || gram.empty()) throw BadInput("gram: expected a nonempty array of rows");
    for (const auto& row : gram) lat.gram.push_back(int_vector(row, "gram row"));
    lat.polarization = int_vector(field(j, "polarization"), "polarization");
    lat.validate();
    return lat;
}

SheafInvariants invariants_from_json(const json& j) {
    SheafInvariants inv;
    inv.rank = mpz_from_json(field(j, "rank"), "rank");
    inv.c1 = int_vector(field(j, "c1"), "c1");
    inv.c2 = mpz_from_json(field(j, "c2"), "c2");
    return inv;
}

json invariants_to_json(const SheafInvariants& inv) {
    json c1 = json::array();
    for (const auto& c : inv.c1) c1.push_back(mpz_to_json(c));
    return json{{"rank", mpz_to_json(inv.rank)}, {"c1", c1}, {"c2", mpz_to_json(inv.c2)}};
}

std::shared_ptr<GradedRing> ring_from_json(const json& j) {
    VariableNames vars = kDefaultVariables;
    if (j.contains("variables")) {
        const json& v = j["variables"];
        if (!v.is_array() || v.size() != 4) throw BadInput("variables: expected 4 names");
        for (int i = 0; i < 4; ++i) {
            if (!v[i].is_string()) throw BadInput("variables: expected strings");
            vars[i] = v[i].get<std::string>();
        }
    }
    const json& h = field(j, "hypersurface");
    if (!h.is_string()) throw BadInput("hypersurface: expected a form string");
    return std::make_shared<GradedRing>(parse_form(h.get<std::string>(), vars), vars);
}

FormSpace form_space_from_json(const json& j, const VariableNames& vars) {
    if (j.contains("rank")) {
        mpz_class r = mpz_from_json(j["rank"], "rank");
        if (r != 1)
            throw UnsupportedRank("only syzygy bundles of line bundles are supported (rank 1), got rank " +
                                  r.get_str());
    }
    FormSpace fs;
    const json& deg = field(j, "degree");
    if (!deg.is_number_integer() && !deg.is_number_unsigned())
        throw BadInput("degree: expected an integer");
    fs.degree = deg.get<int>();
    const json& forms = field(j, "forms");
    if (!forms.is_array()) throw BadInput("forms: expected an array of form strings");
    for (const auto& f : forms) {
        if (!f.is_string()) throw BadInput("forms: expected strings");
        fs.forms.push_back(parse_form(f.get<std::string>(), vars));
    }
    return fs;
}

json form_space_to_json(const FormSpace& fs, const VariableNames& vars) {
    json forms = json::array();
    for (const auto& f : fs.forms) forms.push_back(f.to_string(vars));
    return json{{"degree", fs.degree}, {"forms", forms}};
}

json surface_to_json(const GradedRing& ring) {
    json vars = json::array();
    for (const auto& v : ring.variables()) vars.push_back(v);
    return json{{"variables", vars},
                {"hypersurface", ring.hypersurface().to_string(ring.variables())},
                {"degree", ring.degree()}};
}

json kernel_result_to_json(const KernelResult& k) {
    json j{{"source_dim", k.source_dim},
           {"target_dim", k.target_dim},
           {"rank", k.rank},
           {"kernel_dim", k.kernel_dim},
           {"backend", to_string(k.provenance)}};
    if (k.prime != 0) j["prime"] = k.prime;
    return j;
}

json basepoint_to_json(const BasepointCheck& b) {
    json j{{"status", b.certified ? "Certified" : "Undetermined"}};
    if (b.certified) j["degree"] = b.degree;
    j["max_degree"] = b.max_degree;
    return j;
}

json schedule_to_json(const TwistSchedule& s) {
    json entries = json::array();
    for (const auto& e : s.entries)
        entries.push_back(json{{"q", e.q}, {"m_q", e.m_q}, {"twist_checked", e.twist_checked}});
    return entries;
}

json certificate_to_json(const StabilityCertificate& cert, const GradedRing& ring,
                         const FormSpace& fs) {
    json j;
    j["surface"] = surface_to_json(ring);
    j["form_space"] = form_space_to_json(fs, ring.variables());
    j["mu"] = mpq_to_json(cert.mu);
    j["rank"] = cert.rank_s;
    j["basepoint"] = basepoint_to_json(cert.basepoint);
    j["schedule"] = schedule_to_json(cert.schedule);
    json dims = json::array();
    json kernels = json::array();
    json provenance = json::array();
    for (const auto& k : cert.kernels) {
        dims.push_back(k.kernel_dim);
        kernels.push_back(kernel_result_to_json(k));
        provenance.push_back(to_string(k.provenance));
    }
    j["kernel_dims"] = dims;
    j["kernels"] = kernels;
    j["backend_provenance"] = provenance;
    j["verdict"] = to_string(cert.verdict);
    if (cert.destabilizer) {
        const auto& d = *cert.destabilizer;
        j["destabilizer"] = json{{"m", d.m},
                                 {"h0", d.h0},
                                 {"sub_slope", mpq_to_json(d.sub_slope)},
                                 {"mu", mpq_to_json(d.mu)},
                                 {"strict", d.strict}};
    } else {
        j["destabilizer"] = nullptr;
    }
    j["picard_assumption_note"] = cert.picard_assumption_note;
    return j;
}

json doubling_to_json(const DoublingReport& rep) {
    return json{{"base_dim", mpz_to_json(rep.base_dim)},
                {"fiber_dim", mpz_to_json(rep.fiber_dim)},
                {"target_dim", mpz_to_json(rep.target_dim)},
                {"holds", rep.holds}};
}

json sparse_matq_to_json(const SparseMatQ& m) {
    json rows = json::array();
    for (long r = 0; r < m.rows; ++r) rows.push_back(json::array());
    for (long r = 0; r < m.rows; ++r)
        for (long c = 0; c < m.cols; ++c) rows[r].push_back(mpq_to_json(mpq_class(0)));
    for (long c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.col[c]) rows[r][c] = mpq_to_json(v);
    return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

json koszul_matrix_to_json(const KoszulMap& map) {
    MatQ dense = map.assemble_exact(false);
    json rows = json::array();
    for (long r = 0; r < dense.rows; ++r) {
        json row = json::array();
        for (long c = 0; c < dense.cols; ++c) row.push_back(mpq_to_json(dense.at(r, c)));
        rows.push_back(std::move(row));
    }
    return json{{"q", map.q},           {"t", map.t},
                {"w", map.w},           {"degree", map.a},
                {"rows", dense.rows},   {"cols", dense.cols},
                {"subset_order", "colex"}, {"entries", rows}};
}

json load_json_file(const std::string& path) {
    try {
        if (path == "-") {
            return json::parse(std::cin);
        }
        std::ifstream in(path);
        if (!in) throw BadInput("cannot open file: " + path);
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw BadInput(std::string("JSON parse error: ") + e.what());
    }
}

}  // namespace k3syz::io
