#include "tw/tasep.hpp"

#include <cmath>
#include <string>

#include "parallel.hpp"
#include "tw/errors.hpp"

namespace tw {

long tasep_target_site(double t) {
    const double j = 1.5 * t;
    if (!std::isfinite(t) || t < 0.0 || std::fabs(j - std::round(j)) > 1e-9)
        throw parameter_error("TASEP time must be >= 0 with 3t/2 an integer");
    return -static_cast<long>(std::llround(j));
}

TasepSpec tasep_spec(double t, std::uint64_t seed, int phase) {
    const long reach = static_cast<long>(std::ceil(2.0 * t));
    return {t, -tasep_target_site(t) + reach + 10, reach + 10, seed, phase};
}

void validate(const TasepSpec& spec) {
    const long j = tasep_target_site(spec.t);
    if (spec.phase != 0 && spec.phase != 1) throw parameter_error("TASEP phase must be 0 or 1");
    if (static_cast<double>(spec.left) < -j + 2.0 * spec.t + 10.0)
        throw parameter_error("TASEP left window must be at least 3t/2 + 2t + 10");
    if (spec.right < 10) throw parameter_error("TASEP right window must be at least 10");
}

bool TasepState::occupied(long site) const {
    if (site < first_site || site > last_site()) return false;
    return occupations[static_cast<std::size_t>(site - first_site)] != 0;
}

long TasepState::height(long j) const {
    if (j < first_site || j > last_site()) throw parameter_error("height: site outside the window");
    long h = 2 * n_passed;
    if (j >= 1)
        for (long i = 1; i <= j; ++i) h += 1 - 2 * occupied(i);
    else
        for (long i = j + 1; i <= 0; ++i) h -= 1 - 2 * occupied(i);
    return h;
}

std::size_t TasepState::particle_count() const {
    std::size_t n = 0;
    for (auto o : occupations) n += o != 0;
    return n;
}

TasepSimulator::TasepSimulator(const TasepSpec& spec) : rng_(make_engine(spec.seed)) {
    validate(spec);
    state_.first_site = -spec.left;
    state_.occupations.assign(static_cast<std::size_t>(spec.left + spec.right + 1), 0);
    for (long site = -spec.phase; site >= -spec.left; site -= 2)
        state_.occupations[static_cast<std::size_t>(site + spec.left)] = 1;
    init_particles();
}

TasepSimulator::TasepSimulator(const TasepSpec& spec, std::vector<std::uint8_t> occupations)
    : rng_(make_engine(spec.seed)) {
    if (occupations.size() != static_cast<std::size_t>(spec.left + spec.right + 1))
        throw parameter_error("TASEP occupations must cover the window");
    if (occupations.back() != 0) throw parameter_error("TASEP last window site must start empty");
    state_.first_site = -spec.left;
    state_.occupations = std::move(occupations);
    init_particles();
}

void TasepSimulator::init_particles() {
    for (std::size_t k = 0; k < state_.occupations.size(); ++k)
        if (state_.occupations[k]) position_.push_back(state_.first_site + static_cast<long>(k));
    slot_.assign(position_.size(), -1);
    for (int p = 0; p < static_cast<int>(position_.size()); ++p) set_mobile(p, can_jump(p));
}

bool TasepSimulator::can_jump(int p) const {
    const long next = position_[static_cast<std::size_t>(p)] + 1;
    return next <= state_.last_site() && !state_.occupied(next);
}

void TasepSimulator::set_mobile(int p, bool on) {
    int& s = slot_[static_cast<std::size_t>(p)];
    if (on && s < 0) {
        s = static_cast<int>(mobile_.size());
        mobile_.push_back(p);
    } else if (!on && s >= 0) {
        const int last = mobile_.back();
        mobile_[static_cast<std::size_t>(s)] = last;
        slot_[static_cast<std::size_t>(last)] = s;
        mobile_.pop_back();
        s = -1;
    }
}

void TasepSimulator::jump(int p) {
    long& x = position_[static_cast<std::size_t>(p)];
    if (x + 1 == state_.last_site())
        throw window_error("TASEP activity reached the right window boundary at t = " +
                           std::to_string(state_.clock));
    if (record_) events_.push_back({state_.clock, x});
    state_.occupations[static_cast<std::size_t>(x - state_.first_site)] = 0;
    ++x;
    state_.occupations[static_cast<std::size_t>(x - state_.first_site)] = 1;
    if (x == 1) ++state_.n_passed;
    set_mobile(p, can_jump(p));
    if (p > 0 && position_[static_cast<std::size_t>(p - 1)] == x - 2) set_mobile(p - 1, true);
}

void TasepSimulator::advance(double until) {
    std::exponential_distribution<double> exponential(1.0);
    while (state_.clock < until) {
        const std::size_t m = mobile_.size();
        if (m == 0) break;
        const double dt = exponential(rng_) / static_cast<double>(m);
        if (state_.clock + dt > until) break;
        state_.clock += dt;
        // Multiply-shift index in [0, m); bias is below 2^-50 for any window here.
        const auto pick = static_cast<std::size_t>((static_cast<unsigned __int128>(rng_()) * m) >> 64);
        jump(mobile_[pick]);
    }
    state_.clock = std::max(state_.clock, until);
}

long TasepSimulator::leftmost_particle() const {
    return position_.empty() ? state_.first_site - 1 : position_.front();
}

double tasep_xi(const TasepState& state, double t) {
    if (!(t > 0.0)) throw parameter_error("tasep_xi needs t > 0");
    const double h = static_cast<double>(state.height(tasep_target_site(t)));
    return (t - 2.0 * h) / std::cbrt(t);
}

double tasep_run(const TasepSpec& spec) {
    TasepSimulator sim(spec);
    sim.advance(spec.t);
    const long j = tasep_target_site(spec.t);
    if (sim.leftmost_particle() > j)
        throw window_error("TASEP left window boundary reached the observation site");
    if (spec.t == 0.0) {
        // No t^{1/3} scale at t = 0; the centred height t - 2h is returned unscaled.
        return -2.0 * static_cast<double>(sim.state().height(j));
    }
    return tasep_xi(sim.state(), spec.t);
}

TasepBatch tasep_batch(const TasepSpec& base, std::size_t count) {
    validate(base);
    std::vector<double> xi(count);
    std::vector<std::uint8_t> ok(count, 0);
    std::vector<std::uint64_t> seeds(count);
    detail::parallel_for(count, [&](std::size_t i) {
        TasepSpec spec = base;
        spec.seed = seeds[i] = substream_seed(base.seed, i);
        try {
            xi[i] = tasep_run(spec);
            ok[i] = 1;
        } catch (const window_error&) {
        }
    });
    TasepBatch batch;
    batch.runs = count;
    for (std::size_t i = 0; i < count; ++i) {
        if (!ok[i]) {
            ++batch.invalid;
            continue;
        }
        batch.run_index.push_back(i);
        batch.seeds.push_back(seeds[i]);
        batch.xi.push_back(xi[i]);
    }
    return batch;
}

TasepBatch tasep_batch(double t, std::size_t count, std::uint64_t seed, int phase) {
    return tasep_batch(tasep_spec(t, seed, phase), count);
}

}  // namespace tw
