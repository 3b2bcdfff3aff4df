#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgcaps/cap.hpp"
#include "pgcaps/pg.hpp"
#include "pgcaps/rng.hpp"

namespace pgcaps {

// Randomized nibble construction of complete caps.
//
// One round works on a state (step i, remaining set, pool, cap):
//   sample   — every pool point is chosen independently with the same
//              probability; the chosen set is the nibble.
//   filter   — a chosen point is kept only if no line through it meets the
//              cap-plus-nibble twice; kept points join the cap.
//   delete   — points on a bisecant of the grown cap, and all chosen
//              points, leave the remaining set.
//   trim     — surviving pool points are additionally removed at random so
//              that under the per-point deletion estimate every pool point
//              survives the round with the same probability.
// After the stop rule fires, greedy completion covers whatever is left.
//
// Randomness contract (part of reproducibility): the sample step draws one
// uniform per pool member in ascending point order; the trim step draws one
// uniform per surviving pool member in ascending point order.  Streams are
// derived per purpose and per step, see rng.hpp.

struct NibbleParams {
    /// Nibble intensity in (0,1); 0 selects the default 1/ln(q)^2, clamped
    /// below 1 for tiny q where the formula exceeds it.
    double theta = 0.0;
    double c = 300.0;   ///< stop-rule exponent
    double c1 = 100.0;  ///< phase-boundary exponent
    std::uint64_t stop_s_min = 0;   ///< stop when the pool is this small
    std::uint32_t stall_limit = 3;  ///< stop after this many kept-nothing rounds
    std::uint64_t sample_cap = 100000;  ///< max remaining-set size for exact extrema
    std::uint32_t sample_size = 4096;   ///< points sampled when estimating extrema
    std::uint64_t seed = 0;
    /// When set, also stop once survival_lo <= ln(q)^c / q^{(N+1)/2}.  At
    /// practical q this threshold is typically above 1 with the default c,
    /// which would end the run before it starts, so the rule is opt-in.
    bool theoretical_stop = false;
    PickRule completion = PickRule::seeded;

    double effective_theta(std::uint32_t q) const;
    void validate() const;
};

enum class Phase { one, two, post };
enum class StopReason { none, theoretical, pool_floor, stall };

const char* to_string(Phase p);
const char* to_string(StopReason r);

struct StepTrace {
    std::uint32_t step = 0;
    std::uint64_t chosen = 0;     ///< nibble size
    std::uint64_t kept = 0;       ///< conflict-free points added to the cap
    std::uint64_t deleted = 0;    ///< points removed from the remaining set
    std::uint64_t trimmed = 0;    ///< pool points removed by the trim
    std::uint64_t pool_size = 0;       ///< pool size after the step
    std::uint64_t remaining_size = 0;  ///< remaining-set size after the step
    std::uint64_t cap_size = 0;        ///< cap size after the step
    double pick_prob = 0.0;
    bool pick_clamped = false;
    double del_ub = 0.0;  ///< per-point deletion probability, upper bound
    double del_lb = 0.0;  ///< per-point deletion probability, lower bound
    bool del_ub_clamped = false;
    bool del_lb_clamped = false;
    double cap_scale = 0.0;     ///< cap size / q^{(N-1)/2} after the step
    double survival_lo = 1.0;   ///< prod (1 - del_ub) after the step
    double survival_hi = 1.0;   ///< prod (1 - del_lb) after the step
    Phase phase = Phase::post;  ///< phase the step executed in
    bool extrema_sampled = false;
    bool stalled = false;  ///< the step ran with an empty pool
    double wall_ms = 0.0;
};

/// |A_i(v)| and |T_i(v)| of one point: pool points collinear with v through
/// a cap point, and pool pairs collinear with v.
struct PointStats {
    std::uint64_t cap_collinear = 0;
    std::uint64_t pool_pairs = 0;
};

struct ExtremaStats {
    std::uint64_t max_cap_collinear = 0;
    std::uint64_t min_cap_collinear = 0;
    std::uint64_t max_pool_pairs = 0;
    bool sampled = false;
};

struct RunResult;

class NibbleState {
public:
    NibbleState(const ProjectiveSpace& sp, NibbleParams params);

    /// Rebuilds an arbitrary mid-run state, validating the structural
    /// invariants (pool within remaining set, remaining set clear of cap
    /// bisecants, cap really a cap).  survival values default to
    /// |pool| / num_points when not given.
    static NibbleState from_parts(const ProjectiveSpace& sp, NibbleParams params,
                                  std::uint32_t step,
                                  const std::vector<PointId>& cap_points,
                                  const Bitset& remaining, const Bitset& pool,
                                  std::optional<double> survival_lo = std::nullopt,
                                  std::optional<double> survival_hi = std::nullopt);

    const ProjectiveSpace& space() const { return *space_; }
    const NibbleParams& params() const { return params_; }
    std::uint32_t step_index() const { return step_; }
    const Bitset& remaining() const { return remaining_; }
    const Bitset& pool() const { return pool_; }
    const Cap& cap() const { return cap_; }
    const CoverageMap& coverage() const { return cov_; }
    double cap_scale() const { return cap_scale_; }
    double survival_lo() const { return survival_lo_; }
    double survival_hi() const { return survival_hi_; }
    std::uint32_t stall_run() const { return stall_run_; }
    double theta() const { return theta_; }

private:
    const ProjectiveSpace* space_;
    NibbleParams params_;
    double theta_;
    std::uint32_t step_ = 0;
    Bitset remaining_, pool_;
    Cap cap_;
    CoverageMap cov_;
    double cap_scale_ = 0.0;
    double survival_lo_ = 1.0;
    double survival_hi_ = 1.0;
    std::uint32_t stall_run_ = 0;

    friend StepTrace advance(NibbleState&, Rng&, Rng&, Rng&);
    friend Bitset apply_delete(NibbleState&, const Bitset&, const Bitset&);
    friend Bitset apply_trim(NibbleState&, const Bitset&, double, double,
                             const std::vector<PointStats>&, Rng&);
    friend RunResult run(const ProjectiveSpace&, const NibbleParams&, bool);
};

/// Per-round pick probability min(1, theta / (survival_lo * q^{(N+1)/2})).
/// clamped reports whether the min bound was active.
double pick_probability(const NibbleState& st, bool* clamped = nullptr);

/// |A_i(v)|: pool points other than v collinear with v and some cap point.
/// Lines through v hit the cap at most once while v is in the remaining set,
/// so the per-cap-point lines are disjoint and are summed directly.
/// Requires v in the remaining set.
std::uint64_t count_cap_collinear(const NibbleState& st, PointId v);

/// |T_i(v)|: unordered pool pairs collinear with v, as the pencil sum of
/// C(m, 2) over lines through v with m pool points besides v.
/// Requires v in the remaining set.
std::uint64_t count_pool_pairs(const NibbleState& st, PointId v);

PointStats point_stats(const NibbleState& st, PointId v);

/// Extrema of the per-point statistics over the remaining set: exact scan
/// when the set is within params.sample_cap, otherwise over sample_size
/// points drawn with the given generator (flagged in the result).
ExtremaStats scan_extrema(const NibbleState& st, Rng& sample_rng);

/// Upper bound p + p*max|A| + p^2*max|T| on the per-point deletion
/// probability, kept strictly inside (0,1) so survival products stay
/// positive.
double deletion_prob_upper(double p, const ExtremaStats& ex, bool* clamped = nullptr);

/// Lower bound p*min|A| - 2p^2*max|A|^2 - p^3*max|A|*max|T|, clamped into
/// [0, upper].
double deletion_prob_lower(double p, const ExtremaStats& ex, double upper,
                           bool* clamped = nullptr);

/// Independence-approximation estimate of Pr(v is deleted this round):
/// 1 - (1-p) * (1-p)^{|A(v)|} * (1-p^2)^{|T(v)|}, clamped into [0, upper].
/// The three factors model v itself being chosen, a chosen point on a
/// cap-line through v, and a chosen pair collinear with v.
double estimate_deletion_prob(double p, const PointStats& ps, double upper);

/// The nibble: each pool point independently with probability p.
/// Consumes one draw per pool member in ascending order.
Bitset sample_nibble(const NibbleState& st, double p, Rng& rng);

/// Conflict filter: keeps x iff no two points of (cap + chosen) - {x} are
/// collinear with x.  Adding the kept set to the cap preserves the cap
/// property: a collinear triple would give some kept point two such
/// neighbours.
Bitset conflict_free(const NibbleState& st, const Bitset& chosen);

/// Adds the kept points to the cap, then removes every remaining-set point
/// that is now covered or was chosen; returns the removed set.
Bitset apply_delete(NibbleState& st, const Bitset& chosen, const Bitset& kept);

/// Removes each surviving pool point independently with probability
/// (upper - est(v)) / (1 - est(v)), so that under the estimate every pool
/// point survives the round with probability exactly 1 - upper; returns the
/// trimmed set.  stats must hold pre-delete statistics for all pool members.
/// Consumes one draw per surviving pool member in ascending order.
Bitset apply_trim(NibbleState& st, const Bitset& deleted, double p, double upper,
                  const std::vector<PointStats>& stats, Rng& rng);

/// One full sample/filter/delete/trim round; updates the survival products
/// and appends nothing (the caller owns the trace).  With an empty pool the
/// state is unchanged except the step counter and the trace is flagged
/// stalled.
StepTrace advance(NibbleState& st, Rng& choose_rng, Rng& trim_rng, Rng& sample_rng);
StepTrace advance(NibbleState& st);  ///< derives the three streams from params.seed

struct StopCheck {
    bool stop;
    StopReason reason;
};

StopCheck stop_check(const NibbleState& st);

/// Diagnostic phase label; evaluated in log space so the huge exponents of
/// the defaults cannot overflow.
Phase phase_of(const NibbleState& st);
Phase phase_of_survival(double survival_lo, double c, double c1, int dim, std::uint32_t q);

struct ResidualEntry {
    double measured = 0.0;
    double predicted = 0.0;
    double residual = 0.0;  ///< (measured - predicted) / max(predicted, 1); always finite
};

/// Observational comparison of the state against its idealized predictions
/// (pool size vs survival_lo * q^N and so on).  Nothing is asserted: the
/// paper-style error terms are asymptotic and desk-scale runs only record
/// how far off they are.
struct ConcentrationReport {
    std::uint32_t step = 0;
    std::optional<ResidualEntry> kept_size;      ///< last |kept| vs theta q^{(N-1)/2}
    ResidualEntry pool_size;                     ///< |pool| vs survival_lo q^N
    ResidualEntry remaining_size;                ///< |remaining| vs survival_hi q^N
    std::optional<ResidualEntry> pool_line;      ///< mean |pool on line| vs survival_lo q
    std::optional<ResidualEntry> pool_pairs;     ///< mean |T(v)| vs survival_lo^2 q^{N+1} / 2
    std::optional<ResidualEntry> cap_collinear;  ///< mean |A(v)| vs cap_scale survival_lo q^{(N+1)/2}
};

ConcentrationReport concentration_report(const NibbleState& st,
                                         const StepTrace* last_step,
                                         Rng& sample_rng);

struct RunResult {
    Cap cap;
    CoverageMap coverage;
    std::vector<StepTrace> trace;
    std::vector<ConcentrationReport> diagnostics;  ///< when requested
    StopReason stop = StopReason::none;
    std::uint32_t steps = 0;
    std::uint64_t nibble_cap_size = 0;  ///< cap size when the loop stopped
};

/// Full construction: rounds until the stop rule fires, then greedy
/// completion over the exact uncovered bitmap.  Deterministic for a fixed
/// (space, params, seed).
RunResult run(const ProjectiveSpace& sp, const NibbleParams& params,
              bool collect_diagnostics = false);

}  // namespace pgcaps
