#pragma once

#include <optional>
#include <string>

#include "k3syz/koszul.hpp"

namespace k3syz {

struct TwistScheduleEntry {
    int q = 0;
    long m_q = 0;            // smallest m with m*d >= q*mu
    long twist_checked = 0;  // -m_q, the twist fed to the kernel computation
};

// The q = 1..w-2 vanishing checks that certify cohomological stability of
// the syzygy bundle S of (O_X(a), W) for the hyperplane polarization on a
// degree-d hypersurface: h^0(∧^q S(-m_q)) = 0 with m_q = ceil(q*mu/d) and
// mu = -a*d/(w-1). Larger twists inject into these, so one check per q
// suffices.
struct TwistSchedule {
    int a = 0;
    int w = 0;
    int d = 0;
    mpq_class mu;
    std::vector<TwistScheduleEntry> entries;
};

TwistSchedule twist_schedule(int a, int w, int d);

enum class Verdict {
    CohomologicallyStable,
    NotCohomologicallyStable,
    Unstable,
    StrictlySemistableCandidate,
    Withheld,  // base-point freeness undetermined, kernels reported anyway
};

const char* to_string(Verdict v);
int exit_code(Verdict v);

struct DestabilizerReport {
    long m = 0;           // twist with h^0(S(m)) != 0
    long h0 = 0;          // the section count found
    mpq_class sub_slope;  // -m*d, slope of the line subbundle O_X(-m)
    mpq_class mu;         // slope of S
    bool strict = false;  // sub_slope > mu (strictly destabilizing)
};

struct CheckTiming {
    std::string label;
    long long ms = 0;
};

struct StabilityCertificate {
    mpq_class mu;
    int rank_s = 0;
    BasepointCheck basepoint;
    TwistSchedule schedule;
    std::vector<KernelResult> kernels;  // one per schedule entry
    Verdict verdict = Verdict::Withheld;
    std::optional<DestabilizerReport> destabilizer;
    std::string picard_assumption_note;
    std::vector<CheckTiming> timings;
};

struct StabilityOptions {
    RankBackend backend;
    int max_basepoint_degree = -1;  // -1: default max(w*a, 3a+d-3)
    bool parallel = true;
};

// Scans m = 1..floor(a/(w-1)), the only twists whose section line bundle
// O_X(-m) has slope >= mu; reports the first twist with sections. Absence
// of a section-twist destabilizer proves nothing.
std::optional<DestabilizerReport> destabilizing_search(const FormSpaceContext& ctx,
                                                       const RankBackend& backend = {});

StabilityCertificate check_cohomological_stability(const FormSpaceContext& ctx,
                                                   const StabilityOptions& options = {});

extern const char* const kPicardAssumptionNote;

}  // namespace k3syz
