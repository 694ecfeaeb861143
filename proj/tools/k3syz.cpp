#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <set>

#include "k3syz/errors.hpp"
#include "k3syz/json_io.hpp"
#include "k3syz/parser.hpp"
#include "k3syz/version.hpp"

using namespace k3syz;
using io::json;

namespace {

struct GlobalOptions {
    std::uint64_t prime = 0;    // 0: derive from seed or use the default
    bool exact = false;
    long long seed = -1;        // -1: unseeded
    int max_degree = -1;        // basepoint search bound; -1: library default
    bool formal = false;
    bool serial = false;

    RankBackend backend() const {
        RankBackend b;
        if (exact) {
            b.mode = RankMode::ExactOnly;
            return b;
        }
        if (prime != 0) {
            b.prime = prime;
        } else if (seed >= 0) {
            b.prime = fp::seeded_prime(static_cast<std::uint64_t>(seed));
        }
        return b;
    }
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json output_header() { return json{{"version", kVersion}}; }

int cmd_invariants(const std::string& path, const GlobalOptions& g, bool with_syzygy,
                   long long syzygy_w, bool with_extension, long long extension_v) {
    json in = io::load_json_file(path);
    IntersectionLattice lat = io::lattice_from_json(in);
    SheafInvariants inv = io::invariants_from_json(in);
    inv.validate(lat);

    json out = output_header();
    out["input"] = in;
    out["chi"] = io::mpz_to_json(euler_characteristic(inv, lat));
    out["chi_end"] = io::mpz_to_json(chi_end(inv, lat));
    out["spl_dim"] = io::mpz_to_json(spl_dim(inv, lat));
    out["slope"] = io::mpq_to_json(slope(inv, lat));

    if (with_syzygy) {
        mpz_class w(std::to_string(syzygy_w), 10);
        SheafInvariants s = syzygy_transform(inv, lat, w, g.formal);
        json block;
        block["w"] = syzygy_w;
        block["invariants"] = io::invariants_to_json(s);
        block["chi"] = io::mpz_to_json(euler_characteristic(s, lat));
        block["spl_dim"] = io::mpz_to_json(spl_dim(s, lat));
        block["slope"] = io::mpq_to_json(slope(s, lat));
        block["fiber_dim"] = io::mpz_to_json(syzygy_fiber_dim(inv, lat, w, g.formal));
        block["doubling"] = io::doubling_to_json(doubling_check_syzygy(inv, lat, w, g.formal));
        out["syzygy"] = block;
    }
    if (with_extension) {
        mpz_class v(std::to_string(extension_v), 10);
        SheafInvariants e = extension_transform(inv, lat, v, g.formal);
        json block;
        block["v"] = extension_v;
        block["u"] = io::mpz_to_json(-euler_characteristic(inv, lat));
        block["invariants"] = io::invariants_to_json(e);
        block["chi"] = io::mpz_to_json(euler_characteristic(e, lat));
        block["spl_dim"] = io::mpz_to_json(spl_dim(e, lat));
        block["fiber_dim"] = io::mpz_to_json(extension_fiber_dim(inv, lat, v, g.formal));
        block["doubling"] = io::doubling_to_json(doubling_check_extension(inv, lat, v, g.formal));
        out["extension"] = block;
    }
    emit(out);
    return 0;
}

int cmd_stability(const std::string& surface_path, const std::string& forms_path,
                  const GlobalOptions& g) {
    auto ring = io::ring_from_json(io::load_json_file(surface_path));
    FormSpace fs = io::form_space_from_json(io::load_json_file(forms_path), ring->variables());
    FormSpaceContext ctx(ring, fs);

    StabilityOptions opts;
    opts.backend = g.backend();
    opts.max_basepoint_degree = g.max_degree;
    opts.parallel = !g.serial;
    StabilityCertificate cert = check_cohomological_stability(ctx, opts);

    json out = output_header();
    out.update(io::certificate_to_json(cert, *ring, fs));
    emit(out);

    // wall-clock diagnostics stay off stdout so identical inputs produce
    // byte-identical certificates
    json times;
    for (const auto& t : cert.timings) times[t.label] = t.ms;
    std::cerr << json{{"timings_ms", times}}.dump() << "\n";
    return exit_code(cert.verdict);
}

int cmd_h0(const std::string& surface_path, const std::string& forms_path, int q, int t,
           const GlobalOptions& g, const std::string& export_path) {
    auto ring = io::ring_from_json(io::load_json_file(surface_path));
    FormSpace fs = io::form_space_from_json(io::load_json_file(forms_path), ring->variables());
    FormSpaceContext ctx(ring, fs);
    if (q < 1 || q > ctx.w())
        throw OutOfRange("q = " + std::to_string(q) + " outside [1, " + std::to_string(ctx.w()) +
                         "]");
    if (t < 0) throw OutOfRange("t must be >= 0, got " + std::to_string(t));

    KoszulMap map = koszul_matrix(ctx, q, t);
    KernelResult k = kernel_dimension(map, g.backend());

    json out = output_header();
    out["surface"] = io::surface_to_json(*ring);
    out["form_space"] = io::form_space_to_json(fs, ring->variables());
    out["q"] = q;
    out["t"] = t;
    out.update(io::kernel_result_to_json(k));
    out["interpretation"] =
        "kernel dimension of the Koszul map; equals h^0 of the twisted exterior power of the "
        "syzygy bundle when W is base-point free";
    if (!export_path.empty()) {
        std::ofstream f(export_path);
        if (!f) throw BadInput("cannot write matrix export: " + export_path);
        f << io::koszul_matrix_to_json(map).dump(2) << "\n";
        out["matrix_export"] = export_path;
    }
    emit(out);
    return 0;
}

int cmd_basepoints(const std::string& surface_path, const std::string& forms_path,
                   const GlobalOptions& g) {
    auto ring = io::ring_from_json(io::load_json_file(surface_path));
    FormSpace fs = io::form_space_from_json(io::load_json_file(forms_path), ring->variables());
    FormSpaceContext ctx(ring, fs);
    BasepointCheck b = basepoint_check(ctx, g.max_degree, g.backend().prime);
    json out = output_header();
    out["surface"] = io::surface_to_json(*ring);
    out["form_space"] = io::form_space_to_json(fs, ring->variables());
    out.update(io::basepoint_to_json(b));
    emit(out);
    return 0;
}

int cmd_ring_dim(const std::string& surface_path, int t) {
    auto ring = io::ring_from_json(io::load_json_file(surface_path));
    json out = output_header();
    out["surface"] = io::surface_to_json(*ring);
    out["t"] = t;
    out["dim"] = ring->graded_dim(t);
    emit(out);
    return 0;
}

// seeded sampling loop over random form spaces; verdict statistics for the
// open question which (a, w) admit stable syzygy subspaces
int cmd_experiment(const std::string& surface_path, int a, int w, int count,
                   const GlobalOptions& g) {
    if (a < 1 || w < 3 || count < 1) throw BadInput("experiment needs a >= 1, w >= 3, count >= 1");
    auto ring = io::ring_from_json(io::load_json_file(surface_path));
    if (w > ring->graded_dim(a))
        throw BadInput("w exceeds dim H^0(O_X(a)) = " + std::to_string(ring->graded_dim(a)));
    std::mt19937_64 rng(g.seed >= 0 ? static_cast<std::uint64_t>(g.seed) : 0);
    auto monos = monomials_of_degree(a);

    json runs = json::array();
    std::map<std::string, int> counts;
    for (int run = 0; run < count; ++run) {
        FormSpace fs;
        fs.degree = a;
        while (true) {
            fs.forms.clear();
            for (int i = 0; i < w; ++i) {
                Form f(a);
                for (Monomial m : monos)
                    f.add_term(m, mpq_class(static_cast<long>(rng() % 19) - 9));
                if (f.is_zero()) f.add_term(monos[rng() % monos.size()], 1);
                fs.forms.push_back(f);
            }
            try {
                FormSpaceContext probe(ring, fs);
                break;
            } catch (const DependentForms&) {
            }
        }
        FormSpaceContext ctx(ring, fs);
        StabilityOptions opts;
        opts.backend = g.backend();
        opts.max_basepoint_degree = g.max_degree;
        opts.parallel = !g.serial;
        StabilityCertificate cert = check_cohomological_stability(ctx, opts);
        counts[to_string(cert.verdict)] += 1;
        runs.push_back(json{{"forms", io::form_space_to_json(fs, ring->variables())["forms"]},
                            {"verdict", to_string(cert.verdict)}});
    }
    json out = output_header();
    out["surface"] = io::surface_to_json(*ring);
    out["degree"] = a;
    out["dim"] = w;
    out["count"] = count;
    out["seed"] = g.seed;
    json cj;
    for (const auto& [k, v] : counts) cj[k] = v;
    out["verdict_counts"] = cj;
    out["runs"] = runs;
    emit(out);
    return 0;
}

}  // namespace

int run_main(int argc, char** argv) {
    CLI::App app{"Exact invariants and cohomological stability of syzygy bundles on hypersurface K3 surfaces"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--prime", g.prime, "Word-sized prime for modular ranks (default 2^61-1)");
    app.add_flag("--exact", g.exact, "Skip the modular pass; rational elimination only");
    app.add_option("--seed", g.seed, "Seed for randomized choices (prime selection, sampling)");
    app.add_option("--max-degree", g.max_degree, "Base-point search bound (default max(w*a, 3a+d-3))");
    app.add_flag("--formal", g.formal, "Skip the w/v range preconditions (formal identities)");
    app.add_flag("--serial", g.serial, "Disable per-q parallelism");

    auto* inv_cmd = app.add_subcommand("invariants", "Euler characteristics, moduli dimensions, transforms");
    inv_cmd->fallthrough();
    std::string inv_path;
    long long syzygy_w = 0, extension_v = 0;
    inv_cmd->add_option("input", inv_path, "Invariants JSON (\"-\" for stdin)")->required();
    inv_cmd->add_option("--syzygy", syzygy_w, "Apply the syzygy transform with dim W = w");
    inv_cmd->add_option("--extension", extension_v, "Apply the extension transform with dim V = v");

    std::string surface_path, forms_path, export_path;
    auto* st_cmd = app.add_subcommand("stability", "Cohomological stability certificate");
    st_cmd->fallthrough();
    st_cmd->add_option("--surface", surface_path, "Surface JSON")->required();
    st_cmd->add_option("--forms", forms_path, "Form-space JSON")->required();

    auto* h0_cmd = app.add_subcommand("h0", "Kernel dimension of one Koszul map");
    h0_cmd->fallthrough();
    int q = 1, t = 0;
    h0_cmd->add_option("--surface", surface_path, "Surface JSON")->required();
    h0_cmd->add_option("--forms", forms_path, "Form-space JSON")->required();
    h0_cmd->add_option("--q", q, "Exterior power")->required();
    h0_cmd->add_option("--t", t, "Twist")->required();
    h0_cmd->add_option("--export-matrix", export_path, "Write the exact matrix as JSON");

    auto* bp_cmd = app.add_subcommand("basepoints", "Base-point freeness certification");
    bp_cmd->fallthrough();
    bp_cmd->add_option("--surface", surface_path, "Surface JSON")->required();
    bp_cmd->add_option("--forms", forms_path, "Form-space JSON")->required();

    auto* rd_cmd = app.add_subcommand("ring-dim", "dim of a graded piece of R");
    rd_cmd->fallthrough();
    int ring_t = 0;
    rd_cmd->add_option("--surface", surface_path, "Surface JSON")->required();
    rd_cmd->add_option("--t", ring_t, "Degree")->required();

    auto* ex_cmd = app.add_subcommand("experiment", "Verdict statistics over sampled form spaces");
    ex_cmd->fallthrough();
    int ex_a = 2, ex_w = 3, ex_count = 10;
    ex_cmd->add_option("--surface", surface_path, "Surface JSON")->required();
    ex_cmd->add_option("--degree", ex_a, "Form degree a")->required();
    ex_cmd->add_option("--dim", ex_w, "Subspace dimension w")->required();
    ex_cmd->add_option("--count", ex_count, "Number of sampled spaces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        json err{{"error", {{"type", "UsageError"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        if (g.prime != 0 && !fp::is_prime(g.prime)) throw BadInput("--prime is not prime");
        if (inv_cmd->parsed())
            return cmd_invariants(inv_path, g, inv_cmd->count("--syzygy") > 0, syzygy_w,
                                  inv_cmd->count("--extension") > 0, extension_v);
        if (st_cmd->parsed()) return cmd_stability(surface_path, forms_path, g);
        if (h0_cmd->parsed()) return cmd_h0(surface_path, forms_path, q, t, g, export_path);
        if (bp_cmd->parsed()) return cmd_basepoints(surface_path, forms_path, g);
        if (rd_cmd->parsed()) return cmd_ring_dim(surface_path, ring_t);
        if (ex_cmd->parsed()) return cmd_experiment(surface_path, ex_a, ex_w, ex_count, g);
    } catch (const Error& e) {
        json err{{"error", {{"type", e.kind()}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        json err{{"error", {{"type", "Internal"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}

int main(int argc, char** argv) {
    try {
        return run_main(argc, argv);
    } catch (...) {
        std::cerr << R"({"error":{"type":"Internal","message":"unexpected failure"}})" << "\n";
        return 1;
    }
}
