#include "rcomp/warped.hpp"

#include "rcomp/errors.hpp"
#include "rcomp/quadrature.hpp"
#include "rcomp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <queue>
#include <sstream>

namespace rcomp {

// ---------------------------------------------------------------------------
// CubicSpline

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> y)
    : t_(std::move(t)), y_(std::move(y)) {
  const std::size_t n = t_.size();
  if (n < 3 || y_.size() != n) {
    throw std::invalid_argument("cubic spline needs at least 3 samples of matching size");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t_[i] > t_[i - 1])) {
      throw std::invalid_argument("cubic spline abscissae must be strictly increasing");
    }
  }
  // Natural end conditions, tridiagonal solve (Thomas algorithm).
  m_.assign(n, 0.0);
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t_[i] - t_[i - 1];
    const double h1 = t_[i + 1] - t_[i];
    const double a = h0 / 6.0;
    const double b = (h0 + h1) / 3.0;
    const double cc = h1 / 6.0;
    const double rhs = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    const double denom = b - a * c[i - 1];
    c[i] = cc / denom;
    d[i] = (rhs - a * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = d[i] - c[i] * m_[i + 1];
  }
}

std::size_t CubicSpline::segment(double x) const {
  auto it = std::upper_bound(t_.begin(), t_.end(), x);
  std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  return std::min(i, t_.size() - 2);
}

double CubicSpline::value(double x) const {
  const std::size_t i = segment(x);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - x) / h;
  const double b = (x - t_[i]) / h;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - x) / h;
  const double b = (x - t_[i]) / h;
  return (y_[i + 1] - y_[i]) / h - (3.0 * a * a - 1.0) * h * m_[i] / 6.0 +
         (3.0 * b * b - 1.0) * h * m_[i + 1] / 6.0;
}

double CubicSpline::second_derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - x) / h;
  const double b = (x - t_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

// ---------------------------------------------------------------------------
// WarpProfile

WarpProfile::WarpProfile(std::string description, double length, Fn f, Fn df, Fn ddf)
    : description_(std::move(description)),
      length_(length),
      f_(std::move(f)),
      df_(std::move(df)),
      ddf_(std::move(ddf)) {
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw std::invalid_argument("warp profile length must be positive and finite");
  }
}

WarpProfile WarpProfile::tabulated(std::vector<double> t, std::vector<double> f,
                                   std::string description) {
  if (t.empty() || t.front() != 0.0) {
    throw std::invalid_argument("tabulated warp profile must start at t = 0");
  }
  auto spline = std::make_shared<CubicSpline>(std::move(t), std::move(f));
  const double L = spline->back();
  return WarpProfile(
      std::move(description), L, [spline](double x) { return spline->value(x); },
      [spline](double x) { return spline->derivative(x); },
      [spline](double x) { return spline->second_derivative(x); });
}

WarpProfile WarpProfile::load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open warp profile table");
  }
  std::vector<double> t, f;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ss(line);
    double a, b;
    if (!(ss >> a)) {
      if (line.find_first_not_of(" \t\r,") == std::string::npos) {
        continue;
      }
      throw ParseError(path, lineno, "expected two numbers 't f'");
    }
    if (ss.peek() == ',') {
      ss.get();
    }
    if (!(ss >> b)) {
      throw ParseError(path, lineno, "expected two numbers 't f'");
    }
    std::string rest;
    if (ss >> rest) {
      throw ParseError(path, lineno, "trailing content '" + rest + "'");
    }
    if (!t.empty() && !(a > t.back())) {
      throw ParseError(path, lineno, "t values must be strictly increasing");
    }
    t.push_back(a);
    f.push_back(b);
  }
  if (t.size() < 3) {
    throw ParseError(path, lineno, "need at least 3 samples");
  }
  if (t.front() != 0.0) {
    throw ParseError(path, 1, "first sample must be at t = 0");
  }
  return tabulated(std::move(t), std::move(f), "table:" + path);
}

// ---------------------------------------------------------------------------
// WarpedProductManifold

double unit_sphere_volume(int k) {
  if (k < 0) {
    throw std::invalid_argument("sphere dimension must be nonnegative");
  }
  const double half = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

WarpedProductManifold::WarpedProductManifold(int k, WarpProfile profile, bool cap)
    : k_(k), profile_(std::move(profile)), cap_(cap), sigma_k_(unit_sphere_volume(k)) {}

void WarpedProductManifold::require_depth(double delta, bool allow_end) const {
  const double L = profile_.length();
  if (!std::isfinite(delta) || delta < 0.0 || delta > L || (!allow_end && delta == L)) {
    std::ostringstream os;
    os << "depth " << delta << " outside [0, " << L << (allow_end ? "]" : ")");
    throw std::out_of_range(os.str());
  }
}

double WarpedProductManifold::boundary_area() const {
  return sigma_k_ * std::pow(profile_.f(0.0), k_);
}

double WarpedProductManifold::boundary_mean_curvature() const {
  return k_ * profile_.df(0.0) / profile_.f(0.0);
}

double WarpedProductManifold::boundary_diameter() const {
  return std::numbers::pi * profile_.f(0.0);
}

double WarpedProductManifold::total_volume() const {
  return annulus_volume(0.0, profile_.length());
}

double WarpedProductManifold::annulus_volume(double delta2, double delta1) const {
  if (!std::isfinite(delta2) || !std::isfinite(delta1) || delta2 < 0.0 || delta2 > delta1) {
    throw std::out_of_range("annulus_volume needs 0 <= delta2 <= delta1");
  }
  const double L = profile_.length();
  const double a = std::min(delta2, L);
  const double b = std::min(delta1, L);
  if (a == b) {
    return 0.0;
  }
  const int k = k_;
  const auto& p = profile_;
  auto integrand = [&p, k](double t) { return std::pow(p.f(t), k); };
  // Tighter than 1e-13 the Kronrod error estimate is roundoff-bound near a pole
  // and the recursion runs to full depth without gaining accuracy.
  return sigma_k_ * integrate_adaptive(integrand, a, b, 1e-13).value;
}

double WarpedProductManifold::level_area(double delta) const {
  require_depth(delta, false);
  return sigma_k_ * std::pow(profile_.f(delta), k_);
}

double WarpedProductManifold::jacobian_ratio(double delta) const {
  require_depth(delta, false);
  return std::pow(profile_.f(delta) / profile_.f(0.0), k_);
}

double WarpedProductManifold::radial_laplacian(double delta) const {
  require_depth(delta, false);
  return k_ * profile_.df(delta) / profile_.f(delta);
}

namespace {

// Simpson rule for the slice length of the straight coordinate segment
// (t0, a0) -> (t1, a1).
double segment_length(const WarpProfile& p, double t0, double a0, double t1, double a1,
                      int intervals) {
  const double dt = t1 - t0;
  const double da = a1 - a0;
  if (da == 0.0) {
    return std::abs(dt);
  }
  auto speed = [&](double s) {
    const double f = p.f(t0 + s * dt);
    return std::sqrt(dt * dt + f * f * da * da);
  };
  double sum = speed(0.0) + speed(1.0);
  const double h = 1.0 / intervals;
  for (int i = 1; i < intervals; ++i) {
    sum += speed(i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

double WarpedProductManifold::slice_path_length(
    const std::vector<std::pair<double, double>>& nodes) const {
  double total = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    total += segment_length(profile_, nodes[i - 1].first, nodes[i - 1].second, nodes[i].first,
                            nodes[i].second, 32);
  }
  return total;
}

double WarpedProductManifold::diameter(const DiameterOptions& opts) const {
  const double L = profile_.length();
  const std::size_t na = std::max<std::size_t>(8, opts.angular_nodes + opts.angular_nodes % 2);
  const double da = 2.0 * std::numbers::pi / static_cast<double>(na);

  double fmax = 0.0;
  for (int i = 0; i <= 64; ++i) {
    fmax = std::max(fmax, profile_.f(L * i / 64.0));
  }
  const auto nt = static_cast<std::size_t>(std::clamp<double>(
      std::ceil(L / (std::max(fmax, 1e-12) * da)), 8.0, static_cast<double>(opts.max_radial_nodes)));
  const double dt = L / static_cast<double>(nt);
  const std::size_t rows = nt + 1;

  struct Offset {
    int di;
    int dm;
  };
  std::vector<Offset> offsets;
  const int s = static_cast<int>(opts.stencil);
  for (int di = -s; di <= s; ++di) {
    for (int dm = -s; dm <= s; ++dm) {
      if ((di || dm) && std::gcd(std::abs(di), std::abs(dm)) == 1) {
        offsets.push_back({di, dm});
      }
    }
  }
  // Edge weights depend on the row and the offset only.
  std::vector<double> weight(rows * offsets.size(), -1.0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t o = 0; o < offsets.size(); ++o) {
      const long j = static_cast<long>(i) + offsets[o].di;
      if (j < 0 || j >= static_cast<long>(rows)) {
        continue;
      }
      weight[i * offsets.size() + o] = segment_length(
          profile_, static_cast<double>(i) * dt, 0.0, static_cast<double>(j) * dt,
          offsets[o].dm * da, 8);
    }
  }

  const std::size_t count = rows * na;
  std::vector<double> dist(count);
  using Item = std::pair<double, std::size_t>;
  double diameter = 0.0;
  const std::size_t sources = std::max<std::size_t>(2, opts.source_count);
  for (std::size_t si = 0; si < sources; ++si) {
    const std::size_t src_row = (nt * si) / (sources - 1);
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[src_row * na] = 0.0;
    heap.push({0.0, src_row * na});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) {
        continue;
      }
      const std::size_t i = u / na;
      const std::size_t m = u % na;
      for (std::size_t o = 0; o < offsets.size(); ++o) {
        const double w = weight[i * offsets.size() + o];
        if (w < 0.0) {
          continue;
        }
        const std::size_t j = static_cast<std::size_t>(static_cast<long>(i) + offsets[o].di);
        const std::size_t mm =
            static_cast<std::size_t>((static_cast<long>(m) + offsets[o].dm + static_cast<long>(na)) %
                                     static_cast<long>(na));
        const std::size_t v = j * na + mm;
        if (d + w < dist[v]) {
          dist[v] = d + w;
          heap.push({dist[v], v});
        }
      }
      if (cap_ && i == nt) {
        const std::size_t v = nt * na + (m + na / 2) % na;
        if (d < dist[v]) {
          dist[v] = d;
          heap.push({d, v});
        }
      }
    }
    diameter = std::max(diameter, *std::max_element(dist.begin(), dist.end()));
  }
  return diameter;
}

CheckResult WarpedProductManifold::distance_field_validation(std::size_t sample_count,
                                                             std::uint64_t seed,
                                                             double tol) const {
  CheckResult res;
  res.name = "distance_field";
  res.margin_kind = "absolute";
  res.tolerance = tol;
  const double L = profile_.length();
  const double pi = std::numbers::pi;
  Rng rng(seed);

  auto random_polyline = [&](double t_start, double t_end, double a_end) {
    std::vector<std::pair<double, double>> nodes{{t_start, 0.0}};
    const int inner = 1 + static_cast<int>(rng.next() % 3);
    for (int q = 0; q < inner; ++q) {
      nodes.emplace_back(rng.uniform(0.0, L), rng.uniform(-pi, pi));
    }
    nodes.emplace_back(t_end, a_end);
    return nodes;
  };
  auto describe = [](const std::vector<std::pair<double, double>>& nodes) {
    std::ostringstream os;
    os.precision(6);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      os << (i ? " -> " : "") << "(" << nodes[i].first << "," << nodes[i].second << ")";
    }
    return os.str();
  };

  for (std::size_t s = 0; s < sample_count; ++s) {
    const double t = rng.uniform(0.0, L);
    auto test = [&](double length, const std::string& path) {
      res.add_sample(length - t, [&] {
        std::ostringstream os;
        os.precision(10);
        os << "point t=" << t << " reaches the boundary in " << length << " < r via " << path;
        return os.str();
      });
    };
    // Boundary t = 0: the radial segment and random detours.
    test(t, "radial segment");
    for (int c = 0; c < 3; ++c) {
      auto nodes = random_polyline(t, 0.0, rng.uniform(-pi, pi));
      test(slice_path_length(nodes), describe(nodes));
    }
    if (far_end_ == FarEnd::Open) {
      test(L - t, "radial segment to the far boundary t=L");
      for (int c = 0; c < 2; ++c) {
        auto nodes = random_polyline(t, L, rng.uniform(-pi, pi));
        test(slice_path_length(nodes), describe(nodes));
      }
    } else if (far_end_ == FarEnd::Cap) {
      // Through the antipodal identification and back down to t = 0.
      const double a = rng.uniform(-pi, pi);
      auto first = random_polyline(t, L, a);
      auto second = std::vector<std::pair<double, double>>{{L, a + pi}, {0.0, rng.uniform(-pi, pi)}};
      test(slice_path_length(first) + slice_path_length(second),
           describe(first) + " ~ " + describe(second));
    }
  }
  res.finalize();
  return res;
}

WarpedProductManifold build_warped(int k, WarpProfile profile, bool cap, const WarpedOptions& opts,
                                   std::string name, std::map<std::string, double> parameters) {
  if (k < 1) {
    throw std::invalid_argument("warped product needs sphere dimension k >= 1");
  }
  WarpedProductManifold m(k, std::move(profile), cap);
  m.name_ = std::move(name);
  m.parameters_ = std::move(parameters);
  const WarpProfile& p = m.profile_;
  const double L = p.length();
  WarpCertificate& cert = m.certificate_;
  const double tol = opts.ricci_tolerance;

  auto fail = [&](bool& flag, double t, const std::string& what) {
    if (flag) {
      std::ostringstream os;
      os.precision(10);
      os << what << " at t=" << t;
      cert.violations.push_back(os.str());
    }
    flag = false;
  };

  const std::size_t grid = std::max<std::size_t>(16, opts.certificate_grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = L * static_cast<double>(i) / static_cast<double>(grid);
    const double f = p.f(t);
    const double df = p.df(t);
    const double ddf = p.ddf(t);
    if (!(f > 0.0) || !std::isfinite(f)) {
      fail(cert.positive, t, "f(t) = " + std::to_string(f) + " is not positive");
      continue;
    }
    if (df > tol) {
      fail(cert.monotone, t, "f'(t) = " + std::to_string(df) + " > 0");
    }
    const double radial = -k * ddf / f;
    const double tangential = (k - 1) * (1.0 - df * df) / (f * f) - ddf / f;
    if (radial < -tol) {
      fail(cert.ricci_nonnegative, t, "radial Ricci -k f''/f = " + std::to_string(radial) + " < 0");
    }
    if (tangential < -tol) {
      fail(cert.ricci_nonnegative, t,
           "tangential Ricci (k-1)(1-f'^2)/f^2 - f''/f = " + std::to_string(tangential) + " < 0");
    }
  }

  const double f_end = p.f(L);
  if (f_end <= opts.pole_tolerance * p.f(0.0)) {
    m.far_end_ = FarEnd::Pole;
  } else if (cap) {
    m.far_end_ = FarEnd::Cap;
  } else {
    m.far_end_ = FarEnd::Open;
    fail(cert.closed_far_end, L,
         "far end is an open second boundary component (f(L) > 0 without cap)");
  }

  if (!cert.ok() && !opts.bypass_validation) {
    throw ValidationError("warped profile '" + p.description() +
                          "' rejected: " + cert.violations.front());
  }
  return m;
}

ComparisonProfile comparison_profile(const WarpedProductManifold& m) {
  return ComparisonProfile(m.dimension(), m.boundary_mean_curvature());
}

// ---------------------------------------------------------------------------
// Generators

WarpedProductManifold euclidean_ball(int n, double R) {
  if (n < 2 || !(R > 0.0)) {
    throw std::invalid_argument("ball needs n >= 2 and R > 0");
  }
  WarpProfile p("ball", R, [R](double t) { return R - t; }, [](double) { return -1.0; },
                [](double) { return 0.0; });
  return build_warped(n - 1, std::move(p), false, {}, "ball",
                      {{"n", static_cast<double>(n)}, {"R", R}});
}

WarpedProductManifold cylinder_cap(int k, double j) {
  if (k < 1 || !(j > 0.0)) {
    throw std::invalid_argument("cylinder_cap needs k >= 1 and j > 0");
  }
  WarpProfile p("cylinder", j, [](double) { return 1.0; }, [](double) { return 0.0; },
                [](double) { return 0.0; });
  return build_warped(k, std::move(p), true, {}, "cylinder_cap",
                      {{"k", static_cast<double>(k)}, {"j", j}});
}

WarpedProductManifold spherical_cap(int k, double theta0) {
  if (k < 1 || !(theta0 > 0.0) || theta0 > std::numbers::pi / 2) {
    throw std::invalid_argument("spherical_cap needs k >= 1 and 0 < theta0 <= pi/2");
  }
  WarpProfile p(
      "spherical_cap", theta0, [theta0](double t) { return std::sin(theta0 - t); },
      [theta0](double t) { return -std::cos(theta0 - t); },
      [theta0](double t) { return -std::sin(theta0 - t); });
  return build_warped(k, std::move(p), false, {}, "spherical_cap",
                      {{"k", static_cast<double>(k)}, {"theta0", theta0}});
}

WarpedProductManifold exponential_warp(int k, double L) {
  WarpProfile p("exponential", L, [](double t) { return std::exp(-t); },
                [](double t) { return -std::exp(-t); }, [](double t) { return std::exp(-t); });
  WarpedOptions opts;
  opts.bypass_validation = true;
  return build_warped(k, std::move(p), true, opts, "exponential",
                      {{"k", static_cast<double>(k)}, {"L", L}});
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key,
             std::optional<double> fallback = std::nullopt) {
  if (auto it = params.find(key); it != params.end()) {
    return it->second;
  }
  if (fallback) {
    return *fallback;
  }
  throw std::invalid_argument("missing parameter '" + key + "'");
}

int int_param(const std::map<std::string, double>& params, const std::string& key,
              std::optional<double> fallback = std::nullopt) {
  const double v = param(params, key, fallback);
  if (v != std::floor(v)) {
    throw std::invalid_argument("parameter '" + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

}  // namespace

WarpedProductManifold make_warped(const std::string& family,
                                  const std::map<std::string, double>& params) {
  if (family == "ball") {
    return euclidean_ball(int_param(params, "n", 2), param(params, "R", 1.0));
  }
  if (family == "cylinder_cap") {
    return cylinder_cap(int_param(params, "k", 1), param(params, "j"));
  }
  if (family == "spherical_cap") {
    return spherical_cap(int_param(params, "k", 1), param(params, "theta0"));
  }
  if (family == "exponential") {
    return exponential_warp(int_param(params, "k", 2), param(params, "L", 1.0));
  }
  throw std::invalid_argument("unknown warped family '" + family + "'");
}

}  // namespace rcomp
