#include "ads/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "ads/rng.hpp"
#include "json.hpp"

namespace ads {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double log_sum_exp(const Vec& a) {
  double m = a.maxCoeff();
  return m + std::log((a.array() - m).exp().sum());
}
}  // namespace

void IsotropicGmm::validate() const {
  if (k() < 1) throw ParameterError("gmm needs at least one component");
  if (means.rows() != k() || variances.size() != k()) {
    throw ParameterError("gmm component counts disagree");
  }
  if (std::abs(weights.sum() - 1.0) > 1e-12 || weights.minCoeff() < 0.0) {
    throw ParameterError("gmm weights must be a simplex vector");
  }
  if (variances.minCoeff() <= 0.0) throw ParameterError("gmm variances must be positive");
}

NoisedGmmView noised_view(const IsotropicGmm& prior, int tau, const NoiseSchedule& sched) {
  sched.check_step(tau);
  NoisedGmmView v;
  v.tau = tau;
  v.alpha_bar = sched.alpha_bar(tau);
  v.weights = prior.weights;
  v.means_tau = std::sqrt(v.alpha_bar) * prior.means;
  v.variances_tau = (v.alpha_bar * prior.variances.array() + (1.0 - v.alpha_bar)).matrix();
  return v;
}

MixtureEval evaluate_mixture(const NoisedGmmView& view, const Vec& x) {
  const int K = static_cast<int>(view.weights.size());
  const int d = static_cast<int>(x.size());

  Vec log_terms(K);
  for (int k = 0; k < K; ++k) {
    double v = view.variances_tau[k];
    double d2 = (x - view.means_tau.row(k).transpose()).squaredNorm();
    double lw = view.weights[k] > 0.0 ? std::log(view.weights[k])
                                      : -std::numeric_limits<double>::infinity();
    log_terms[k] = lw - 0.5 * d * (kLog2Pi + std::log(v)) - 0.5 * d2 / v;
  }

  MixtureEval out;
  out.log_density = log_sum_exp(log_terms);
  out.gamma = (log_terms.array() - out.log_density).exp().matrix();

  Vec gv = (out.gamma.array() / view.variances_tau.array()).matrix();
  out.score = view.means_tau.transpose() * gv - x * gv.sum();
  return out;
}

Vec score(const NoisedGmmView& view, const Vec& x) { return evaluate_mixture(view, x).score; }

double log_density(const NoisedGmmView& view, const Vec& x) {
  return evaluate_mixture(view, x).log_density;
}

Vec tweedie_from_eval(const NoisedGmmView& view, const Vec& x_tau, const MixtureEval& eval) {
  if (view.alpha_bar < 1e-12) throw NumericalError("alpha_bar too small for denoising");
  return (x_tau + (1.0 - view.alpha_bar) * eval.score) / std::sqrt(view.alpha_bar);
}

Vec tweedie_denoise(const IsotropicGmm& prior, const Vec& x_tau, int tau,
                    const NoiseSchedule& sched) {
  NoisedGmmView view = noised_view(prior, tau, sched);
  return tweedie_from_eval(view, x_tau, evaluate_mixture(view, x_tau));
}

Vec jacobian_apply_from_eval(const NoisedGmmView& view, const Vec& x_tau,
                             const MixtureEval& eval, const Vec& v) {
  if (view.alpha_bar < 1e-12) throw NumericalError("alpha_bar too small for denoising");
  // H v for the mixture log-density Hessian:
  //   H = sum_k gamma_k u_k u_k' - g g' - (sum_k gamma_k / v_k) I,  u_k = (m_k - x)/v_k
  Vec mv = view.means_tau * v;  // K
  double xv = x_tau.dot(v);
  Vec u_dot_v = ((mv.array() - xv) / view.variances_tau.array()).matrix();
  Vec c = (eval.gamma.array() * u_dot_v.array() / view.variances_tau.array()).matrix();

  Vec hv = view.means_tau.transpose() * c - x_tau * c.sum();
  hv -= eval.score.dot(v) * eval.score;
  hv -= (eval.gamma.array() / view.variances_tau.array()).sum() * v;

  return (v + (1.0 - view.alpha_bar) * hv) / std::sqrt(view.alpha_bar);
}

Vec tweedie_jacobian_apply(const IsotropicGmm& prior, const Vec& x_tau, int tau,
                           const NoiseSchedule& sched, const Vec& v) {
  NoisedGmmView view = noised_view(prior, tau, sched);
  return jacobian_apply_from_eval(view, x_tau, evaluate_mixture(view, x_tau), v);
}

namespace {

// k-means++ style seeding: spread initial means over the data.
Mat seed_means(const Mat& data, int K, rng::Stream& stream) {
  const int N = static_cast<int>(data.rows());
  Mat means(K, data.cols());
  int first = static_cast<int>(stream.next_below(N));
  means.row(0) = data.row(first);

  Vec d2 = (data.rowwise() - means.row(0)).rowwise().squaredNorm();
  for (int k = 1; k < K; ++k) {
    double total = d2.sum();
    int pick = 0;
    if (total > 0.0) {
      double u = stream.next_unit() * total;
      double acc = 0.0;
      for (int n = 0; n < N; ++n) {
        acc += d2[n];
        if (acc >= u) {
          pick = n;
          break;
        }
      }
    } else {
      pick = static_cast<int>(stream.next_below(N));
    }
    means.row(k) = data.row(pick);
    d2 = d2.cwiseMin((data.rowwise() - means.row(k)).rowwise().squaredNorm());
  }
  return means;
}

}  // namespace

EmResult fit_gmm_em(const Mat& data, int K, const EmOptions& opts, std::uint64_t seed) {
  const int N = static_cast<int>(data.rows());
  const int d = static_cast<int>(data.cols());
  if (N == 0) throw ParameterError("em: empty dataset");
  if (K < 1 || K > N) throw ParameterError("em: need N >= K >= 1");

  rng::Stream stream = rng::Stream::keyed(seed, 0x656du);

  EmResult res;
  IsotropicGmm& g = res.model;
  g.weights = Vec::Constant(K, 1.0 / K);
  g.means = seed_means(data, K, stream);

  Vec center = data.colwise().mean();
  double pooled = (data.rowwise() - center.transpose()).rowwise().squaredNorm().mean() / d;
  pooled = std::max(pooled, opts.variance_floor);
  g.variances = Vec::Constant(K, pooled);

  Mat log_resp(N, K);
  double prev_ll = -std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    // E-step in the log domain
    Vec log_w(K), log_norm(K);
    for (int k = 0; k < K; ++k) {
      log_w[k] = g.weights[k] > 0.0 ? std::log(g.weights[k])
                                    : -std::numeric_limits<double>::infinity();
      log_norm[k] = -0.5 * d * (kLog2Pi + std::log(g.variances[k]));
    }
    Mat d2 = (-2.0 * data * g.means.transpose()).rowwise() +
             g.means.rowwise().squaredNorm().transpose();
    d2.colwise() += data.rowwise().squaredNorm();

    double ll = 0.0;
    for (int n = 0; n < N; ++n) {
      Vec a = log_w + log_norm -
              (0.5 * d2.row(n).transpose().array() / g.variances.array()).matrix();
      double lse = log_sum_exp(a);
      log_resp.row(n) = (a.array() - lse).transpose();
      ll += lse;
    }
    ll /= N;
    res.log_likelihoods.push_back(ll);

    // M-step, exact for isotropic covariances
    Mat resp = log_resp.array().exp();
    Vec nk = resp.colwise().sum();
    for (int k = 0; k < K; ++k) {
      if (nk[k] <= 0.0) {
        res.warnings.push_back("component " + std::to_string(k) + " received no mass");
        nk[k] = std::numeric_limits<double>::min();
        continue;
      }
      g.means.row(k) = (resp.col(k).transpose() * data) / nk[k];
    }
    g.weights = nk / N;
    g.weights /= g.weights.sum();

    Mat delta2 = (-2.0 * data * g.means.transpose()).rowwise() +
                 g.means.rowwise().squaredNorm().transpose();
    delta2.colwise() += data.rowwise().squaredNorm();
    for (int k = 0; k < K; ++k) {
      double s2 = nk[k] > 1e-300
                      ? resp.col(k).dot(delta2.col(k).cwiseMax(0.0)) / (d * nk[k])
                      : 0.0;
      if (s2 < opts.variance_floor) {
        res.warnings.push_back("component " + std::to_string(k) +
                               " variance clamped to floor");
        s2 = opts.variance_floor;
      }
      g.variances[k] = s2;
    }

    if (ll - prev_ll < opts.tol && iter > 0) break;
    prev_ll = ll;
  }

  g.validate();
  return res;
}

void IsotropicGmm::save_json(const std::string& path) const {
  nlohmann::json j;
  j["format"] = "ads-gmm";
  j["version"] = 1;
  j["k"] = k();
  j["d"] = dim();
  j["weights"] = std::vector<double>(weights.data(), weights.data() + weights.size());
  j["variances"] = std::vector<double>(variances.data(), variances.data() + variances.size());
  std::vector<std::vector<double>> m(k());
  for (int i = 0; i < k(); ++i) {
    m[i].assign(means.row(i).data(), means.row(i).data() + dim());
  }
  j["means"] = m;
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << j.dump(2) << "\n";
}

IsotropicGmm IsotropicGmm::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  nlohmann::json j;
  in >> j;
  if (j.value("format", "") != "ads-gmm" || j.value("version", 0) != 1) {
    throw FormatError(path + ": not a version-1 gmm file");
  }
  IsotropicGmm g;
  int K = j.at("k").get<int>();
  int d = j.at("d").get<int>();
  auto w = j.at("weights").get<std::vector<double>>();
  auto v = j.at("variances").get<std::vector<double>>();
  auto m = j.at("means").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(w.size()) != K || static_cast<int>(v.size()) != K ||
      static_cast<int>(m.size()) != K) {
    throw FormatError(path + ": component counts disagree");
  }
  g.weights = Eigen::Map<Vec>(w.data(), K);
  g.variances = Eigen::Map<Vec>(v.data(), K);
  g.means.resize(K, d);
  for (int i = 0; i < K; ++i) {
    if (static_cast<int>(m[i].size()) != d) throw FormatError(path + ": ragged means");
    g.means.row(i) = Eigen::Map<Vec>(m[i].data(), d);
  }
  g.validate();
  return g;
}

}  // namespace ads
