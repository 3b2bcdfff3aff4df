#include "pgcaps/nibble.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace pgcaps {

namespace {

constexpr double kMaxProb = 1.0 - 1e-9;

double pow_q(std::uint32_t q, double e) { return std::pow(double(q), e); }

ResidualEntry make_entry(double measured, double predicted) {
    const double denom = predicted > 0.0 ? predicted : 1.0;
    return {measured, predicted, (measured - predicted) / denom};
}

}  // namespace

double NibbleParams::effective_theta(std::uint32_t q) const {
    if (theta > 0.0) return theta;
    const double t = 1.0 / (std::log(double(q)) * std::log(double(q)));
    return std::min(t, 0.99);  // ln(q)^-2 exceeds 1 for q = 2
}

void NibbleParams::validate() const {
    if (theta < 0.0 || theta >= 1.0)
        throw std::invalid_argument("theta must lie in (0,1), or 0 for the default");
    if (c < 0.0 || c1 < 0.0) throw std::invalid_argument("exponents must be non-negative");
    if (sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
    if (stall_limit < 1) throw std::invalid_argument("stall_limit must be >= 1");
}

const char* to_string(Phase p) {
    switch (p) {
        case Phase::one: return "phase1";
        case Phase::two: return "phase2";
        default: return "post";
    }
}

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::theoretical: return "theoretical";
        case StopReason::pool_floor: return "pool-floor";
        case StopReason::stall: return "stall";
        default: return "none";
    }
}

NibbleState::NibbleState(const ProjectiveSpace& sp, NibbleParams params)
    : space_(&sp),
      params_(params),
      theta_(params.effective_theta(sp.q())),
      remaining_(sp.num_points()),
      pool_(sp.num_points()),
      cap_(sp),
      cov_(sp) {
    params_.validate();
    remaining_.set();
    pool_.set();
}

NibbleState NibbleState::from_parts(const ProjectiveSpace& sp, NibbleParams params,
                                    std::uint32_t step,
                                    const std::vector<PointId>& cap_points,
                                    const Bitset& remaining, const Bitset& pool,
                                    std::optional<double> survival_lo,
                                    std::optional<double> survival_hi) {
    NibbleState st(sp, params);
    if (remaining.size() != sp.num_points() || pool.size() != sp.num_points())
        throw std::invalid_argument("bitset sizes do not match the space");
    if ((pool & ~remaining).any())
        throw std::invalid_argument("pool must be a subset of the remaining set");
    st.cap_ = Cap(sp);
    st.cov_ = CoverageMap(sp);
    for (PointId v : cap_points) st.cap_.add(v, st.cov_);  // checked: validates the cap
    if ((remaining & st.cov_.bits()).any())
        throw std::invalid_argument("remaining set meets a cap bisecant");
    st.remaining_ = remaining;
    st.pool_ = pool;
    st.step_ = step;
    const double fallback =
        std::max<double>(1.0, double(pool.count())) / double(sp.num_points());
    st.survival_lo_ = survival_lo.value_or(fallback);
    st.survival_hi_ = survival_hi.value_or(st.survival_lo_);
    if (!(st.survival_lo_ > 0.0) || st.survival_lo_ > st.survival_hi_ ||
        st.survival_hi_ > 1.0)
        throw std::invalid_argument("survival products must satisfy 0 < lo <= hi <= 1");
    st.cap_scale_ =
        double(st.cap_.size()) / pow_q(sp.q(), (sp.dim() - 1) / 2.0);
    return st;
}

double pick_probability(const NibbleState& st, bool* clamped) {
    const double b = st.survival_lo();
    if (!(b > 0.0)) throw std::domain_error("survival product must be positive");
    const double raw =
        st.theta() / (b * pow_q(st.space().q(), (st.space().dim() + 1) / 2.0));
    if (clamped) *clamped = raw > 1.0;
    return std::min(raw, 1.0);
}

std::uint64_t count_cap_collinear(const NibbleState& st, PointId v) {
    if (!st.remaining().test(v))
        throw std::invalid_argument("point is not in the remaining set");
    const ProjectiveSpace& sp = st.space();
    std::uint64_t acc = 0;
    std::vector<PointId> buf;
    for (PointId a : st.cap().points()) {
        sp.line_into(v, a, buf);
        std::uint32_t cap_on_line = 0;
        std::uint64_t cnt = 0;
        for (PointId x : buf) {
            if (st.cap().contains(x)) {
                ++cap_on_line;
                continue;
            }
            if (x != v && st.pool().test(x)) ++cnt;
        }
        // one cap point per line through v, else v sits on a bisecant
        if (cap_on_line != 1)
            throw std::logic_error("remaining-set point lies on a cap bisecant");
        acc += cnt;
    }
    return acc;
}

std::uint64_t count_pool_pairs(const NibbleState& st, PointId v) {
    if (!st.remaining().test(v))
        throw std::invalid_argument("point is not in the remaining set");
    std::uint64_t acc = 0;
    st.space().for_each_line_through(v, [&](std::span<const PointId> line) {
        std::uint64_t m = 0;
        for (PointId x : line)
            if (x != v && st.pool().test(x)) ++m;
        acc += m * (m - 1) / 2;
    });
    return acc;
}

PointStats point_stats(const NibbleState& st, PointId v) {
    return {count_cap_collinear(st, v), count_pool_pairs(st, v)};
}

namespace {

ExtremaStats fold_extrema(const NibbleState& st, const std::vector<PointId>& pts,
                          std::vector<PointStats>* keep) {
    ExtremaStats ex;
    ex.min_cap_collinear = UINT64_MAX;
    for (PointId v : pts) {
        const PointStats ps = point_stats(st, v);
        if (keep) (*keep)[v] = ps;
        ex.max_cap_collinear = std::max(ex.max_cap_collinear, ps.cap_collinear);
        ex.min_cap_collinear = std::min(ex.min_cap_collinear, ps.cap_collinear);
        ex.max_pool_pairs = std::max(ex.max_pool_pairs, ps.pool_pairs);
    }
    if (pts.empty()) ex.min_cap_collinear = 0;
    return ex;
}

std::vector<PointId> members_of(const Bitset& b) {
    std::vector<PointId> out;
    out.reserve(b.count());
    for (auto v = b.find_first(); v != Bitset::npos; v = b.find_next(v))
        out.push_back(static_cast<PointId>(v));
    return out;
}

}  // namespace

ExtremaStats scan_extrema(const NibbleState& st, Rng& sample_rng) {
    std::vector<PointId> members = members_of(st.remaining());
    if (members.size() <= st.params().sample_cap)
        return fold_extrema(st, members, nullptr);
    std::vector<PointId> sample(st.params().sample_size);
    for (auto& v : sample) v = members[sample_rng.below(members.size())];
    ExtremaStats ex = fold_extrema(st, sample, nullptr);
    ex.sampled = true;
    return ex;
}

double deletion_prob_upper(double p, const ExtremaStats& ex, bool* clamped) {
    const double raw = p + p * double(ex.max_cap_collinear) +
                       p * p * double(ex.max_pool_pairs);
    if (clamped) *clamped = raw > kMaxProb;
    return std::min(raw, kMaxProb);
}

double deletion_prob_lower(double p, const ExtremaStats& ex, double upper,
                           bool* clamped) {
    const double maxA = double(ex.max_cap_collinear);
    const double raw = p * double(ex.min_cap_collinear) - 2.0 * p * p * maxA * maxA -
                       p * p * p * maxA * double(ex.max_pool_pairs);
    if (clamped) *clamped = raw < 0.0 || raw > upper;
    return std::clamp(raw, 0.0, upper);
}

double estimate_deletion_prob(double p, const PointStats& ps, double upper) {
    const double survive = (1.0 - p) * std::pow(1.0 - p, double(ps.cap_collinear)) *
                           std::pow(1.0 - p * p, double(ps.pool_pairs));
    return std::clamp(1.0 - survive, 0.0, upper);
}

Bitset sample_nibble(const NibbleState& st, double p, Rng& rng) {
    Bitset out(st.space().num_points());
    for (auto v = st.pool().find_first(); v != Bitset::npos;
         v = st.pool().find_next(v))
        if (rng.uniform() < p) out.set(v);
    return out;
}

Bitset conflict_free(const NibbleState& st, const Bitset& chosen) {
    const ProjectiveSpace& sp = st.space();
    const std::vector<PointId> picked = members_of(chosen);
    Bitset kept(sp.num_points());
    std::vector<PointId> keys;
    for (PointId x : picked) {
        keys.clear();
        for (PointId a : st.cap().points()) keys.push_back(sp.pencil_key(x, a));
        for (PointId y : picked)
            if (y != x) keys.push_back(sp.pencil_key(x, y));
        std::sort(keys.begin(), keys.end());
        const bool conflict =
            std::adjacent_find(keys.begin(), keys.end()) != keys.end();
        if (!conflict) kept.set(x);
    }
    return kept;
}

Bitset apply_delete(NibbleState& st, const Bitset& chosen, const Bitset& kept) {
    for (auto v = kept.find_first(); v != Bitset::npos; v = kept.find_next(v))
        st.cap_.add(static_cast<PointId>(v), st.cov_);  // checked: filter guarantees legality
    Bitset deleted = st.remaining_ & (st.cov_.bits() | chosen);
    st.remaining_ -= deleted;
    return deleted;
}

Bitset apply_trim(NibbleState& st, const Bitset& deleted, double p, double upper,
                  const std::vector<PointStats>& stats, Rng& rng) {
    if (stats.size() != st.space().num_points())
        throw std::invalid_argument("per-point statistics must cover the whole space");
    Bitset survivors = st.pool_ & ~deleted;
    Bitset trimmed(st.space().num_points());
    for (auto v = survivors.find_first(); v != Bitset::npos;
         v = survivors.find_next(v)) {
        const double est = estimate_deletion_prob(p, stats[v], upper);
        const double comp = (upper - est) / (1.0 - est);
        if (rng.uniform() < comp) trimmed.set(v);
    }
    st.pool_ = survivors - trimmed;
    return trimmed;
}

StepTrace advance(NibbleState& st, Rng& choose_rng, Rng& trim_rng, Rng& sample_rng) {
    const auto t0 = std::chrono::steady_clock::now();
    const ProjectiveSpace& sp = st.space();
    StepTrace tr;
    tr.step = st.step_;
    tr.phase = phase_of(st);

    if (st.pool_.none()) {
        tr.stalled = true;
        tr.pick_prob = pick_probability(st, &tr.pick_clamped);
        tr.pool_size = 0;
        tr.remaining_size = st.remaining_.count();
        tr.cap_size = st.cap_.size();
        tr.cap_scale = st.cap_scale_;
        tr.survival_lo = st.survival_lo_;
        tr.survival_hi = st.survival_hi_;
        ++st.step_;
        ++st.stall_run_;
        tr.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
        return tr;
    }

    const double p = pick_probability(st, &tr.pick_clamped);
    tr.pick_prob = p;

    // Statistics of the current state, gathered before any mutation: the
    // deletion bounds take extrema over the remaining set, the trim needs
    // per-point values for every pool member.
    std::vector<PointStats> stats(sp.num_points());
    ExtremaStats ex;
    const std::vector<PointId> remaining_members = members_of(st.remaining_);
    if (remaining_members.size() <= st.params().sample_cap) {
        ex = fold_extrema(st, remaining_members, &stats);
    } else {
        std::vector<PointId> sample(st.params().sample_size);
        for (auto& v : sample)
            v = remaining_members[sample_rng.below(remaining_members.size())];
        ex = fold_extrema(st, sample, nullptr);
        ex.sampled = true;
        for (auto v = st.pool_.find_first(); v != Bitset::npos;
             v = st.pool_.find_next(v))
            stats[v] = point_stats(st, static_cast<PointId>(v));
    }
    tr.extrema_sampled = ex.sampled;

    const Bitset chosen = sample_nibble(st, p, choose_rng);
    const Bitset kept = conflict_free(st, chosen);
    const double upper = deletion_prob_upper(p, ex, &tr.del_ub_clamped);
    const double lower = deletion_prob_lower(p, ex, upper, &tr.del_lb_clamped);
    tr.del_ub = upper;
    tr.del_lb = lower;

    const Bitset deleted = apply_delete(st, chosen, kept);
    const Bitset trimmed = apply_trim(st, deleted, p, upper, stats, trim_rng);

    st.survival_lo_ *= 1.0 - upper;
    st.survival_hi_ *= 1.0 - lower;
    st.cap_scale_ = double(st.cap_.size()) / pow_q(sp.q(), (sp.dim() - 1) / 2.0);
    st.stall_run_ = kept.none() ? st.stall_run_ + 1 : 0;
    ++st.step_;

    tr.chosen = chosen.count();
    tr.kept = kept.count();
    tr.deleted = deleted.count();
    tr.trimmed = trimmed.count();
    tr.pool_size = st.pool_.count();
    tr.remaining_size = st.remaining_.count();
    tr.cap_size = st.cap_.size();
    tr.cap_scale = st.cap_scale_;
    tr.survival_lo = st.survival_lo_;
    tr.survival_hi = st.survival_hi_;
    tr.wall_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
    return tr;
}

StepTrace advance(NibbleState& st) {
    const std::uint64_t seed = st.params().seed;
    Rng choose = make_stream(seed, Stream::choose, st.step_index());
    Rng trim = make_stream(seed, Stream::compensate, st.step_index());
    Rng sample = make_stream(seed, Stream::sample, st.step_index());
    return advance(st, choose, trim, sample);
}

StopCheck stop_check(const NibbleState& st) {
    const NibbleParams& p = st.params();
    if (p.theoretical_stop) {
        const double lnq = std::log(double(st.space().q()));
        const double log_thr = p.c * std::log(lnq) -
                               (st.space().dim() + 1) / 2.0 * lnq;
        if (std::log(st.survival_lo()) <= log_thr)
            return {true, StopReason::theoretical};
    }
    if (st.pool().count() <= p.stop_s_min) return {true, StopReason::pool_floor};
    if (st.stall_run() >= p.stall_limit) return {true, StopReason::stall};
    return {false, StopReason::none};
}

Phase phase_of_survival(double survival_lo, double c, double c1, int dim,
                        std::uint32_t q) {
    const double lnq = std::log(double(q));
    const double lb = std::log(survival_lo);
    if (lb >= c1 * std::log(lnq) - lnq) return Phase::one;
    if (lb >= c * std::log(lnq) - (dim + 1) / 2.0 * lnq) return Phase::two;
    return Phase::post;
}

Phase phase_of(const NibbleState& st) {
    return phase_of_survival(st.survival_lo(), st.params().c, st.params().c1,
                             st.space().dim(), st.space().q());
}

ConcentrationReport concentration_report(const NibbleState& st,
                                         const StepTrace* last_step,
                                         Rng& sample_rng) {
    const ProjectiveSpace& sp = st.space();
    const std::uint32_t q = sp.q();
    const int n = sp.dim();
    const double b = st.survival_lo();
    const double bp = st.survival_hi();

    ConcentrationReport rep;
    rep.step = st.step_index();
    if (last_step)
        rep.kept_size = make_entry(double(last_step->kept),
                                   st.theta() * pow_q(q, (n - 1) / 2.0));
    rep.pool_size = make_entry(double(st.pool().count()), b * pow_q(q, n));
    rep.remaining_size = make_entry(double(st.remaining().count()), bp * pow_q(q, n));

    std::vector<PointId> members = members_of(st.remaining());
    if (!members.empty()) {
        std::vector<PointId> sample;
        if (members.size() <= st.params().sample_size) {
            sample = members;
        } else {
            sample.resize(st.params().sample_size);
            for (auto& v : sample) v = members[sample_rng.below(members.size())];
        }
        double sum_pairs = 0.0, sum_capline = 0.0;
        for (PointId v : sample) {
            const PointStats ps = point_stats(st, v);
            sum_pairs += double(ps.pool_pairs);
            sum_capline += double(ps.cap_collinear);
        }
        rep.pool_pairs = make_entry(sum_pairs / double(sample.size()),
                                    0.5 * b * b * pow_q(q, n + 1));
        rep.cap_collinear = make_entry(sum_capline / double(sample.size()),
                                       st.cap_scale() * b * pow_q(q, (n + 1) / 2.0));
    }

    // random lines via random point pairs: every line contains the same
    // number of pairs, so pairs sample lines uniformly
    const std::uint64_t total = sp.num_points();
    const std::size_t line_samples =
        std::min<std::size_t>(st.params().sample_size, 64);
    std::vector<PointId> buf;
    double sum_line = 0.0;
    for (std::size_t i = 0; i < line_samples; ++i) {
        const auto a = static_cast<PointId>(sample_rng.below(total));
        PointId bpt;
        do {
            bpt = static_cast<PointId>(sample_rng.below(total));
        } while (bpt == a);
        sp.line_into(a, bpt, buf);
        std::uint64_t m = 0;
        for (PointId x : buf)
            if (st.pool().test(x)) ++m;
        sum_line += double(m);
    }
    rep.pool_line = make_entry(sum_line / double(line_samples), b * double(q));
    return rep;
}

RunResult run(const ProjectiveSpace& sp, const NibbleParams& params,
              bool collect_diagnostics) {
    params.validate();
    NibbleState st(sp, params);
    RunResult out{Cap(sp), CoverageMap(sp), {}, {}, StopReason::none, 0, 0};

    std::uint64_t diag_index = 0;
    if (collect_diagnostics) {
        Rng diag_rng = make_stream(params.seed, Stream::diag, diag_index++);
        out.diagnostics.push_back(concentration_report(st, nullptr, diag_rng));
    }
    const std::uint64_t step_cap = 16 * sp.num_points() + 1024;  // safety net
    while (true) {
        const StopCheck sc = stop_check(st);
        if (sc.stop) {
            out.stop = sc.reason;
            break;
        }
        out.trace.push_back(advance(st));
        if (collect_diagnostics) {
            Rng diag_rng = make_stream(params.seed, Stream::diag, diag_index++);
            out.diagnostics.push_back(
                concentration_report(st, &out.trace.back(), diag_rng));
        }
        if (st.step_index() > step_cap)
            throw std::logic_error("nibble failed to terminate");
    }
    out.steps = st.step_index();
    out.nibble_cap_size = st.cap_.size();

    if (params.completion == PickRule::seeded) {
        Rng greedy_rng = make_stream(params.seed, Stream::greedy, 0);
        greedy_complete(st.cap_, st.cov_, PickRule::seeded, &greedy_rng);
    } else {
        greedy_complete(st.cap_, st.cov_, PickRule::lowest);
    }
    out.cap = std::move(st.cap_);
    out.coverage = std::move(st.cov_);
    return out;
}

}  // namespace pgcaps
