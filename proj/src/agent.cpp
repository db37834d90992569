#include "ads/agent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

namespace ads {

namespace {

// stream tags, keep stable: reordering breaks recorded traces
enum StreamTag : std::uint64_t { kInit = 1, kStepNoise = 2, kMeasure = 3, kPolicy = 4 };

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<int> even_schedule(int lo, int hi, int count) {
  if (count < 1 || lo < 0 || hi < lo) throw ParameterError("bad schedule window");
  std::vector<int> steps;
  std::set<int> seen;
  for (int i = 0; i < count; ++i) {
    double frac = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    int s = hi - static_cast<int>(std::llround(frac * (hi - lo)));
    while (seen.count(s) && s > 0) --s;  // keep times distinct
    if (seen.count(s)) throw ParameterError("schedule window too narrow for count");
    seen.insert(s);
    steps.push_back(s);
  }
  std::sort(steps.rbegin(), steps.rend());
  return steps;
}

void AgentConfig::validate(const ActionSpace& space) const {
  if (T < 1) throw ParameterError("agent needs T >= 1");
  if (n_particles < 1) throw ParameterError("agent needs at least one particle");
  if (policy == PolicyKind::max_entropy && n_particles < 2 && !schedule.empty()) {
    throw ParameterError("entropy policy needs at least two particles");
  }
  std::set<int> sched(schedule.begin(), schedule.end());
  if (sched.size() != schedule.size()) throw ParameterError("schedule has duplicate steps");
  for (int s : schedule) {
    if (s < 0 || s >= T) throw ParameterError("schedule step outside [0, T)");
  }
  std::set<int> init(a_init.begin(), a_init.end());
  if (init.size() != a_init.size()) throw ParameterError("duplicate initial actions");
  for (int a : a_init) {
    if (a < 0 || a >= space.num_actions()) throw ParameterError("initial action outside space");
  }
  if (static_cast<int>(a_init.size() + schedule.size()) > space.num_actions()) {
    throw ParameterError("schedule would exhaust the action space");
  }
  if (policy == PolicyKind::data_variance &&
      data_variance_weights.size() != space.num_actions()) {
    throw ParameterError("data-variance policy needs one weight per action");
  }
  if (!(sigma_y > 0.0)) throw ParameterError("sigma_y must be positive");
  GuidanceConfig{zeta, guidance_mode}.validate();
}

namespace {

AcquisitionTrace run_chain(const AgentConfig& cfg, const IsotropicGmm& prior,
                           const MeasurementModel& model, const Vec& x_true,
                           const std::vector<int>& premask, bool active) {
  model.validate();
  prior.validate();
  cfg.validate(model.space);

  const int d = model.space.shape.size();
  const int n = cfg.n_particles;
  if (prior.dim() != d) throw ParameterError("prior dimension disagrees with data shape");
  if (x_true.size() != d) throw ParameterError("target dimension disagrees with data shape");

  const NoiseSchedule sched = build_linear_schedule(cfg.T, cfg.beta_min, cfg.beta_max);
  const GuidanceConfig gcfg{cfg.zeta, cfg.guidance_mode};
  const PolicyConfig pcfg{cfg.sigma_y, cfg.exponent_sign};

  AcquisitionTrace trace;
  ActionSet acquired(model.space);
  for (int a : premask) acquired.add(a);

  SparseMeasurement y;
  if (!acquired.empty()) {
    auto stream = rng::Stream::keyed(cfg.seed, kMeasure, 0u);
    auto t0 = Clock::now();
    y = acquire(model, x_true, acquired, stream);
    trace.timings.acquire_s += seconds_since(t0);
  }

  std::vector<int> remaining;
  for (int a = 0; a < model.space.num_actions(); ++a) {
    if (!acquired.contains(a)) remaining.push_back(a);
  }

  std::vector<bool> fire(static_cast<std::size_t>(cfg.T), false);
  if (active) {
    for (int s : cfg.schedule) fire[static_cast<std::size_t>(s)] = true;
  }

  Mat states(n, d);
  for (int i = 0; i < n; ++i) {
    auto stream = rng::Stream::keyed(cfg.seed, kInit, static_cast<std::uint64_t>(i));
    for (int j = 0; j < d; ++j) states(i, j) = stream.next_normal();
  }

  Mat x0_hats(n, d);
  MeasurementParticles particles;
  particles.y_hat.resize(n, model.measurement_dim());

  int acquisitions = 0;
  for (int tau = cfg.T; tau >= 1; --tau) {
    auto t0 = Clock::now();
    NoisedGmmView view = noised_view(prior, tau, sched);

    for (int i = 0; i < n; ++i) {
      Vec x = states.row(i).transpose();
      MixtureEval eval = evaluate_mixture(view, x);
      Vec x0_hat = tweedie_from_eval(view, x, eval);
      x0_hats.row(i) = x0_hat.transpose();
      particles.y_hat.row(i) = model.apply_forward(x0_hat).transpose();

      auto z_stream =
          rng::Stream::keyed(cfg.seed, kStepNoise, static_cast<std::uint64_t>(i),
                             static_cast<std::uint64_t>(tau));
      Vec z(d);
      for (int j = 0; j < d; ++j) z[j] = z_stream.next_normal();

      Vec x_prime = reverse_step(x, x0_hat, tau, sched, z);
      if (!acquired.empty() && cfg.zeta != 0.0) {
        Vec grad;
        if (cfg.guidance_mode == JacobianMode::finite_difference) {
          grad = guided_gradient(prior, model, acquired, y, x, tau, sched, gcfg);
        } else {
          grad = guided_gradient_from_eval(view, eval, x, particles.y_hat.row(i).transpose(),
                                           model, acquired, y, gcfg);
        }
        states.row(i) = data_fidelity_step(x_prime, grad, gcfg).transpose();
      } else {
        states.row(i) = x_prime.transpose();
      }
    }
    trace.timings.diffusion_s += seconds_since(t0);

    if (tau % cfg.finite_check_every == 0 || tau == 1) {
      for (int i = 0; i < n; ++i) {
        if (!states.row(i).allFinite()) {
          throw NumericalError("non-finite particle " + std::to_string(i) + " at step " +
                               std::to_string(tau));
        }
      }
    }

    const int now = tau - 1;  // post-update diffusion time
    if (active && fire[static_cast<std::size_t>(now)]) {
      ++acquisitions;
      AcquisitionRecord rec;
      rec.step = now;

      auto tp = Clock::now();
      if (cfg.policy == PolicyKind::max_entropy) {
        rec.scores = action_scores(particles, model.space, remaining, pcfg);
        rec.scored_actions = remaining;
        rec.action = select_max_entropy(rec.scores, remaining);
      } else {
        auto stream = rng::Stream::keyed(cfg.seed, kPolicy, static_cast<std::uint64_t>(acquisitions));
        BaselineKind kind = cfg.policy == PolicyKind::random ? BaselineKind::random
                                                             : BaselineKind::data_variance;
        const Vec* weights =
            cfg.policy == PolicyKind::data_variance ? &cfg.data_variance_weights : nullptr;
        rec.action = baseline_next_action(kind, remaining, weights, stream, &trace.warnings);
      }
      trace.timings.policy_s += seconds_since(tp);

      auto ta = Clock::now();
      acquired.add(rec.action);
      remaining.erase(std::find(remaining.begin(), remaining.end(), rec.action));

      ActionSet just_this(model.space);
      just_this.add(rec.action);
      auto stream = rng::Stream::keyed(cfg.seed, kMeasure, static_cast<std::uint64_t>(acquisitions));
      SparseMeasurement fresh = acquire(model, x_true, just_this, stream);
      rec.values = fresh.values;
      y.append(fresh);
      trace.timings.acquire_s += seconds_since(ta);

      trace.records.push_back(std::move(rec));
    }
  }

  trace.posterior_samples = states;
  trace.x0_hats = x0_hats;
  trace.final_actions = acquired.actions;
  trace.final_mask = mask_and_zero_fill(acquired, y).mask;
  trace.measurements = std::move(y);
  return trace;
}

}  // namespace

AcquisitionTrace run_ads(const AgentConfig& cfg, const IsotropicGmm& prior,
                         const MeasurementModel& model, const Vec& x_true) {
  return run_chain(cfg, prior, model, x_true, cfg.a_init, /*active=*/true);
}

AcquisitionTrace run_fixed_mask(const AgentConfig& cfg, const IsotropicGmm& prior,
                                const MeasurementModel& model, const Vec& x_true,
                                const std::vector<int>& mask_actions) {
  if (mask_actions.empty()) throw ParameterError("fixed-mask run needs a non-empty mask");
  AgentConfig fixed = cfg;
  fixed.schedule.clear();
  fixed.a_init.clear();
  return run_chain(fixed, prior, model, x_true, mask_actions, /*active=*/false);
}

}  // namespace ads
