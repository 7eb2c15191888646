#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tw/rng.hpp"

namespace tw {

/// Window is the site range [-left, right]. Site `right` is never entered: a
/// jump into it means the tracked region was too small and the run is invalid.
struct TasepSpec {
    double t = 0.0;
    long left = 10;
    long right = 10;
    std::uint64_t seed = 0;
    /// Half-flat phase: 0 puts the rightmost particle at site 0 (occupied even
    /// sites <= 0), 1 shifts the pattern one site left.
    int phase = 0;
};

/// Spec with the default window: left = 3t/2 + ceil(2t) + 10, right = ceil(2t) + 10.
TasepSpec tasep_spec(double t, std::uint64_t seed, int phase = 0);

/// The observation site -3t/2. Throws parameter_error unless 3t/2 is an integer.
long tasep_target_site(double t);

/// Throws parameter_error on t < 0, non-integer 3t/2, phase outside {0, 1},
/// left < 3t/2 + 2t + 10 or right < 10.
void validate(const TasepSpec& spec);

struct TasepState {
    std::vector<std::uint8_t> occupations;  // index k is site first_site + k
    long first_site = 0;
    long n_passed = 0;  // jumps across bond (0, 1)
    double clock = 0.0;

    long last_site() const { return first_site + static_cast<long>(occupations.size()) - 1; }
    bool occupied(long site) const;
    /// Height h(j) from the occupations and n_passed; j must lie in the window.
    long height(long j) const;
    std::size_t particle_count() const;
};

struct TasepEvent {
    double time;
    long from;  // the particle moved from `from` to `from + 1`
};

/// Continuous-time TASEP on a finite window, sampled event by event (Gillespie).
class TasepSimulator {
public:
    /// Half-flat initial condition with the given phase.
    explicit TasepSimulator(const TasepSpec& spec);
    /// Arbitrary initial occupations covering [-spec.left, spec.right]; the last site must be empty.
    TasepSimulator(const TasepSpec& spec, std::vector<std::uint8_t> occupations);

    void record_events(bool on) { record_ = on; }
    const std::vector<TasepEvent>& events() const { return events_; }

    /// Runs the dynamics up to time `until`. Throws window_error if a particle
    /// would enter the last site.
    void advance(double until);

    const TasepState& state() const { return state_; }
    /// Position of the leftmost particle (first_site - 1 if there is none).
    long leftmost_particle() const;
    std::size_t mobile_count() const { return mobile_.size(); }

private:
    void init_particles();
    void set_mobile(int p, bool on);
    bool can_jump(int p) const;
    void jump(int p);

    TasepState state_;
    Engine rng_;
    std::vector<long> position_;  // particle positions, increasing
    std::vector<int> mobile_;     // particles with an empty right neighbour
    std::vector<int> slot_;       // index into mobile_, or -1
    std::vector<TasepEvent> events_;
    bool record_ = false;
};

/// (t - 2h) / t^{1/3} at j = -3t/2; requires t > 0. The current, and with it h,
/// fluctuates below its mean, so this orientation is the one distributed as F1.
double tasep_xi(const TasepState& state, double t);

/// One run to time spec.t; at t = 0 the unscaled -2 h(0, 0) is returned.
/// Throws window_error if the window boundary was reached: a particle entering
/// the last site, or the leftmost tracked particle ending right of -3t/2
/// (particles from outside could then affect h).
double tasep_run(const TasepSpec& spec);

struct TasepBatch {
    std::size_t runs = 0;
    std::size_t invalid = 0;
    std::vector<std::size_t> run_index;  // valid runs only, ascending
    std::vector<std::uint64_t> seeds;
    std::vector<double> xi;

    double invalid_fraction() const { return runs == 0 ? 0.0 : static_cast<double>(invalid) / runs; }
};

/// count runs of tasep_spec(t, substream_seed(seed, i), phase), or of `base`
/// with its seed replaced when a custom window is wanted.
TasepBatch tasep_batch(double t, std::size_t count, std::uint64_t seed, int phase = 0);
TasepBatch tasep_batch(const TasepSpec& base, std::size_t count);

}  // namespace tw
