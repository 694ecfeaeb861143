#include "k3syz/stability.hpp"

#include <chrono>
#include <future>

#include "k3syz/errors.hpp"

namespace k3syz {

const char* const kPicardAssumptionNote =
    "The L-stability conclusion assumes Pic(X) is generated by the hyperplane class O_X(1); "
    "kernel dimensions are unconditional for the given hypersurface.";

TwistSchedule twist_schedule(int a, int w, int d) {
    if (w < 3 || a < 1 || d < 1) throw BadInput("twist_schedule needs w >= 3, a >= 1, d >= 1");
    TwistSchedule s;
    s.a = a;
    s.w = w;
    s.d = d;
    s.mu = mpq_class(-static_cast<long>(a) * d, w - 1);
    s.mu.canonicalize();
    for (int q = 1; q <= w - 2; ++q) {
        // m_q = ceil(q*mu/d) = -floor(q*a/(w-1))
        long floor_qa = static_cast<long>(q) * a / (w - 1);
        s.entries.push_back({q, -floor_qa, floor_qa});
    }
    return s;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::CohomologicallyStable: return "CohomologicallyStable";
        case Verdict::NotCohomologicallyStable: return "NotCohomologicallyStable";
        case Verdict::Unstable: return "Unstable";
        case Verdict::StrictlySemistableCandidate: return "StrictlySemistableCandidate";
        case Verdict::Withheld: return "Withheld";
    }
    return "?";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::CohomologicallyStable: return 0;
        case Verdict::Unstable: return 10;
        default: return 11;
    }
}

std::optional<DestabilizerReport> destabilizing_search(const FormSpaceContext& ctx,
                                                       const RankBackend& backend) {
    const int a = ctx.degree();
    const int w = ctx.w();
    const int d = ctx.ring().degree();
    if (w < 3) throw BadInput("destabilizing search needs w >= 3");
    mpq_class mu(-static_cast<long>(a) * d, w - 1);
    mu.canonicalize();
    const long m_max = a / (w - 1);
    for (long m = 1; m <= m_max; ++m) {
        KernelResult k = h0_wedge_syzygy(ctx, 1, static_cast<int>(m), backend);
        if (k.kernel_dim == 0) continue;
        DestabilizerReport rep;
        rep.m = m;
        rep.h0 = k.kernel_dim;
        rep.sub_slope = mpq_class(-m * d);
        rep.mu = mu;
        rep.strict = rep.sub_slope > mu;
        return rep;
    }
    return std::nullopt;
}

StabilityCertificate check_cohomological_stability(const FormSpaceContext& ctx,
                                                   const StabilityOptions& options) {
    using clock = std::chrono::steady_clock;
    const int a = ctx.degree();
    const int w = ctx.w();
    const int d = ctx.ring().degree();

    StabilityCertificate cert;
    cert.rank_s = w - 1;
    cert.schedule = twist_schedule(a, w, d);
    cert.mu = cert.schedule.mu;
    cert.picard_assumption_note = kPicardAssumptionNote;

    auto t0 = clock::now();
    cert.basepoint = basepoint_check(ctx, options.max_basepoint_degree, options.backend.prime);
    cert.timings.push_back(
        {"basepoint",
         std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count()});

    // kernel dimensions are well defined either way; without a base-point
    // certificate they are reported but the verdict is withheld
    auto run_entry = [&](const TwistScheduleEntry& e) {
        auto s0 = clock::now();
        KernelResult k =
            h0_wedge_syzygy(ctx, e.q, static_cast<int>(e.twist_checked), options.backend);
        long long ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - s0).count();
        return std::pair<KernelResult, long long>(k, ms);
    };

    if (options.parallel && cert.schedule.entries.size() > 1) {
        std::vector<std::future<std::pair<KernelResult, long long>>> futures;
        futures.reserve(cert.schedule.entries.size());
        for (const auto& e : cert.schedule.entries)
            futures.push_back(std::async(std::launch::async, run_entry, e));
        for (size_t i = 0; i < futures.size(); ++i) {
            auto [k, ms] = futures[i].get();
            cert.kernels.push_back(k);
            cert.timings.push_back({"q" + std::to_string(cert.schedule.entries[i].q), ms});
        }
    } else {
        for (const auto& e : cert.schedule.entries) {
            auto [k, ms] = run_entry(e);
            cert.kernels.push_back(k);
            cert.timings.push_back({"q" + std::to_string(e.q), ms});
        }
    }

    bool all_zero = true;
    for (const auto& k : cert.kernels) all_zero &= k.kernel_dim == 0;

    if (!cert.basepoint.certified) {
        cert.verdict = Verdict::Withheld;
        return cert;
    }
    if (all_zero) {
        cert.verdict = Verdict::CohomologicallyStable;
        return cert;
    }
    auto s0 = clock::now();
    cert.destabilizer = destabilizing_search(ctx, options.backend);
    cert.timings.push_back(
        {"destabilizer",
         std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - s0).count()});
    if (cert.destabilizer) {
        cert.verdict = cert.destabilizer->strict ? Verdict::Unstable
                                                 : Verdict::StrictlySemistableCandidate;
    } else {
        cert.verdict = Verdict::NotCohomologicallyStable;
    }
    return cert;
}

}  // namespace k3syz
