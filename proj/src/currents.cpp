#include "rcomp/currents.hpp"

#include "rcomp/fileio.hpp"
#include "rcomp/mesh/generators.hpp"
#include "rcomp/mesh/geodesics.hpp"
#include "rcomp/mesh/level_sets.hpp"
#include "rcomp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace rcomp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_delta(double delta) {
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("flat_upper_inner: delta must be >= 0");
  }
}

CheckResult tail_common(const std::vector<double>& grid, const ComparisonProfile& p, double A,
                        double tol, double eq_tol, double floor,
                        const std::function<double(double)>& flat) {
  CheckResult r;
  r.name = kCheckTail;
  r.tolerance = tol;
  r.equality_tolerance = eq_tol;
  r.margin_kind = "relative";
  for (double d : grid) {
    const double measured = flat(d);
    const double bound = swif_tail(p, A, d);
    r.add_sample(relative_margin(measured, bound, floor), [&] {
      return "delta=" + format_double(d) + ": collar volume " + format_double(measured) +
             " > tail " + format_double(bound);
    });
    r.curve.push_back({d, measured, bound});
  }
  r.notes.push_back("collar volume Vol(M) - Vol(M^delta) is an upper bound on the flat distance "
                    "between M and M^delta");
  r.finalize();
  return r;
}

}  // namespace

CurrentSummary summarize(const WarpedProductManifold& m) {
  return {m.dimension(), m.total_volume(), m.boundary_area(), m.diameter(),
          m.boundary_mean_curvature()};
}

CurrentSummary summarize(const mesh::MeshManifold& m) {
  return {2, m.total_area(), m.boundary_length(), mesh::mesh_diameter(m.surface()),
          m.max_mean_curvature()};
}

ComparisonProfile comparison_profile(const mesh::MeshManifold& m) {
  return ComparisonProfile(2, m.max_mean_curvature());
}

double flat_upper_inner(const WarpedProductManifold& m, double delta) {
  require_delta(delta);
  return m.annulus_volume(0.0, delta);
}

double flat_upper_inner(const mesh::MeshManifold& m, double delta) {
  require_delta(delta);
  return mesh::sublevel_area(m.surface(), m.distance(), delta);
}

CheckResult tail_bound_check(const WarpedProductManifold& m, const std::vector<double>& grid,
                             const VerifyConfig& cfg) {
  return tail_common(grid, comparison_profile(m), m.boundary_area(),
                     cfg.tol_scale * cfg.warped_rel_tol, cfg.warped_equality_tol,
                     1e-12 * m.total_volume(), [&](double d) { return flat_upper_inner(m, d); });
}

CheckResult tail_bound_check(const mesh::MeshManifold& m, const std::vector<double>& grid,
                             const VerifyConfig& cfg) {
  return tail_common(grid, comparison_profile(m), m.boundary_length(),
                     cfg.tol_scale * cfg.mesh_rel_tol, cfg.mesh_equality_tol,
                     m.resolution() * m.boundary_length(),
                     [&](double d) { return flat_upper_inner(m, d); });
}

double wells_flat_bound(int N, double R_w, double v) {
  if (N < 0 || !(v >= 0.0)) {
    throw std::invalid_argument("wells_flat_bound: need N >= 0 and v >= 0");
  }
  if (N == 0) {
    return 0.0;
  }
  return v + N * 2.0 * kPi * (1.0 - std::cos(R_w));
}

HypothesisFlags compute_flags(const CurrentSummary& s, double boundary_diameter,
                              bool curvature_certified, const SequenceThresholds& t) {
  HypothesisFlags f;
  f.curvature_certified = curvature_certified;
  f.boundary_area_bounded = s.boundary_mass <= t.boundary_area;
  f.mean_curvature_bounded = s.H_max <= t.mean_curvature;
  f.mean_curvature_negative = s.H_max < 0.0;
  f.diameter_bounded = s.diameter <= t.diameter;
  f.boundary_diameter_bounded = boundary_diameter <= t.boundary_diameter;
  return f;
}

// ---------------------------------------------------------------- families

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void fill_tails(SequenceRecord& rec) {
  const ComparisonProfile p(rec.summary.n, rec.summary.H_max);
  for (double d : rec.deltas) {
    rec.tail_bounds.push_back(swif_tail(p, rec.summary.boundary_mass, d));
  }
}

SequenceRecord from_warped(SequenceRecord rec, const WarpedProductManifold& m,
                           const SequenceThresholds& t) {
  rec.source = "warped";
  rec.summary = summarize(m);
  rec.boundary_diameter = m.boundary_diameter();
  rec.curvature_certified = m.hypotheses_certified();
  for (double d : rec.deltas) {
    rec.flat_bounds.push_back(flat_upper_inner(m, d));
  }
  fill_tails(rec);
  rec.flags = compute_flags(rec.summary, rec.boundary_diameter, rec.curvature_certified, t);
  return rec;
}

SequenceRecord from_mesh(SequenceRecord rec, const mesh::MeshManifold& m,
                         const SequenceThresholds& t) {
  rec.source = "mesh";
  rec.summary = summarize(m);
  rec.boundary_diameter = mesh::boundary_restricted_diameter(m.surface());
  rec.curvature_certified = m.hypotheses_certified();
  for (double d : rec.deltas) {
    rec.flat_bounds.push_back(flat_upper_inner(m, d));
  }
  fill_tails(rec);
  rec.flags = compute_flags(rec.summary, rec.boundary_diameter, rec.curvature_certified, t);
  return rec;
}

}  // namespace

FamilyGenerator family_generator(const std::string& family, const SequenceOptions& opts) {
  const auto P = opts.parameters;
  const auto T = opts.thresholds;
  const auto deltas = opts.deltas;
  auto base = [family, deltas](int j) {
    SequenceRecord rec;
    rec.family = family;
    rec.j = j;
    rec.deltas = deltas;
    return rec;
  };
  if (family == "cylinder_cap") {
    return [=](int j) {
      SequenceRecord rec = base(j);
      const int k = static_cast<int>(param(P, "k", 1.0));
      rec.parameters = {{"k", k}, {"j", j}};
      return from_warped(std::move(rec), cylinder_cap(k, j), T);
    };
  }
  if (family == "ball") {
    return [=](int j) {
      SequenceRecord rec = base(j);
      const int n = static_cast<int>(param(P, "n", 2.0));
      const double R = param(P, "R", 1.0) * j;
      rec.parameters = {{"n", n}, {"R", R}};
      return from_warped(std::move(rec), euclidean_ball(n, R), T);
    };
  }
  if (family == "jfold") {
    return [=](int j) {
      SequenceRecord rec = base(j);
      const double h = param(P, "h", std::min(0.05, 1.0 / (3.0 * j)));
      rec.parameters = {{"j", j}, {"h", h}};
      auto m = mesh::MeshManifold::build(mesh::sphere_jfold(j, h), "jfold", rec.parameters);
      return from_mesh(std::move(rec), m, T);
    };
  }
  if (family == "wells") {
    return [=](int j) {
      SequenceRecord rec = base(j);
      const int N = j;
      const double R_w = std::pow(static_cast<double>(j), -param(P, "R_exponent", 3.0));
      const double v = param(P, "v_coefficient", 1.0) / j;
      const double hole = param(P, "hole", 0.3);
      const double max_depth = param(P, "max_depth", 0.5);
      if (!(hole > 0.0)) {
        throw std::invalid_argument("wells family needs a boundary hole > 0");
      }
      rec.parameters = {{"N", N}, {"R_w", R_w}, {"v", v}, {"hole", hole}, {"max_depth", max_depth}};
      // The closed-form bound exists even where no surface can be built.
      rec.wells_flat_bound = wells_flat_bound(N, R_w, v);
      mesh::WellsAccounting acc;
      try {
        acc = mesh::wells_accounting(N, R_w, v, hole, 0.0, max_depth);
      } catch (const std::exception& e) {
        rec.error = e.what();
        return rec;
      }
      if (param(P, "mesh", 0.0) != 0.0) {
        const double h = param(P, "h", R_w / 4.0);
        rec.parameters["h"] = h;
        auto m = mesh::MeshManifold::build(
            mesh::sphere_with_wells(N, R_w, v, h, hole, max_depth), "wells", rec.parameters);
        auto out = from_mesh(std::move(rec), m, T);
        out.source = "mesh";
        return out;
      }
      // Generator-side accounting: exact areas, and curvature of the round
      // hole boundary, which the wells do not touch.
      rec.source = "accounting";
      rec.summary = {2, acc.expected_area, 2.0 * kPi * std::sin(hole), acc.diameter_bound,
                     std::cos(hole) / std::sin(hole)};
      rec.boundary_diameter = kPi * std::sin(hole);
      rec.curvature_certified = N == 0;
      rec.flat_bounds.assign(rec.deltas.size(), kNaN);
      fill_tails(rec);
      rec.flags = compute_flags(rec.summary, rec.boundary_diameter, rec.curvature_certified, T);
      return rec;
    };
  }
  throw std::invalid_argument("unknown sequence family '" + family +
                              "' (expected cylinder_cap, ball, jfold or wells)");
}

std::vector<SequenceRecord> classify_sequence(const FamilyGenerator& gen, int j_first, int j_last,
                                              unsigned jobs) {
  if (j_first < 1 || j_last < j_first) {
    throw std::invalid_argument("j range must satisfy 1 <= first <= last");
  }
  const std::size_t count = static_cast<std::size_t>(j_last - j_first + 1);
  std::vector<SequenceRecord> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const int j = j_first + static_cast<int>(i);
      try {
        out[i] = gen(j);
      } catch (const std::exception& e) {
        out[i].j = j;
        out[i].error = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  return out;
}

std::vector<SequenceRecord> classify_sequence(const std::string& family, int j_first, int j_last,
                                              const SequenceOptions& opts) {
  const FamilyGenerator gen = family_generator(family, opts);
  auto records = classify_sequence(gen, j_first, j_last, opts.jobs);
  for (auto& r : records) {
    if (!r.ok()) {
      r.family = family;
      r.deltas = opts.deltas;
    }
  }
  return records;
}

// ---------------------------------------------------------------- verdicts

Trend fit_trend(const std::string& quantity, const std::vector<int>& js,
                const std::vector<double>& values) {
  Trend t;
  t.quantity = quantity;
  t.values = values;
  for (double v : values) {
    t.max = std::max(t.max, v);
  }
  t.strictly_increasing = values.size() >= 3;
  for (std::size_t i = 1; i < values.size(); ++i) {
    t.strictly_increasing = t.strictly_increasing && values[i] > values[i - 1];
  }
  const bool positive = std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; });
  if (positive && values.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double x = std::log(static_cast<double>(js[i]));
      const double y = std::log(values[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (den > 0.0) {
      t.growth_exponent = (n * sxy - sx * sy) / den;
    }
  }
  t.diverging = t.strictly_increasing && t.growth_exponent >= 0.5;
  return t;
}

namespace {

std::string describe_trend(const Trend& t) {
  std::ostringstream s;
  if (t.diverging) {
    s << "diverging (strictly increasing, growth exponent " << format_double(t.growth_exponent)
      << ")";
  } else {
    s << "bounded by " << format_double(t.max) << " over the range";
  }
  return s.str();
}

std::string join_indices(const std::vector<int>& js) {
  std::string s;
  for (int j : js) {
    s += (s.empty() ? "" : ",") + std::to_string(j);
  }
  return s;
}

}  // namespace

SequenceVerdict summarize_sequence(const std::vector<SequenceRecord>& records,
                                   const SequenceThresholds& thresholds) {
  SequenceVerdict v;
  if (records.empty()) {
    return v;
  }
  v.family = records.front().family;
  v.j_first = records.front().j;
  v.j_last = records.back().j;
  std::vector<const SequenceRecord*> ok;
  std::vector<int> js;
  for (const auto& r : records) {
    if (r.ok()) {
      ok.push_back(&r);
      js.push_back(r.j);
    } else {
      v.failed_indices.push_back(r.j);
    }
  }
  auto column = [&](auto get) {
    std::vector<double> out;
    for (const auto* r : ok) {
      out.push_back(get(*r));
    }
    return out;
  };
  const Trend mass = fit_trend("mass", js, column([](const SequenceRecord& r) { return r.summary.mass; }));
  const Trend bmass = fit_trend("boundary_mass", js,
                                column([](const SequenceRecord& r) { return r.summary.boundary_mass; }));
  const Trend diam = fit_trend("diameter", js,
                               column([](const SequenceRecord& r) { return r.summary.diameter; }));
  const Trend bdiam = fit_trend("boundary_diameter", js,
                                column([](const SequenceRecord& r) { return r.boundary_diameter; }));
  const Trend H = fit_trend("H_max", js, column([](const SequenceRecord& r) { return r.summary.H_max; }));
  v.trends = {bdiam, bmass, diam, H, mass};

  auto bounded = [&](const std::string& name, const Trend& t, auto flag,
                     double threshold) -> HypothesisVerdict {
    std::vector<int> bad;
    for (const auto* r : ok) {
      // Flags are recomputed from the stored summary, never trusted as stored.
      const HypothesisFlags f =
          compute_flags(r->summary, r->boundary_diameter, r->curvature_certified, thresholds);
      if (!flag(f)) {
        bad.push_back(r->j);
      }
    }
    HypothesisVerdict h{name, bad.empty() && !t.diverging && !ok.empty(), ""};
    if (ok.empty()) {
      h.reason = "no successful indices";
    } else if (!bad.empty()) {
      h.reason = "exceeds " + format_double(threshold) + " at j=" + join_indices(bad);
    } else {
      h.reason = describe_trend(t);
    }
    return h;
  };

  HypothesisVerdict curv{"curvature", true, "certified at every index"};
  {
    std::vector<int> bad;
    for (const auto* r : ok) {
      if (!r->curvature_certified) {
        bad.push_back(r->j);
      }
    }
    if (!bad.empty() || ok.empty()) {
      curv.holds = false;
      curv.reason = ok.empty() ? "no successful indices"
                               : "not certified at j=" + join_indices(bad);
    }
  }
  const auto area = bounded("boundary_area", bmass,
                            [](const HypothesisFlags& f) { return f.boundary_area_bounded; },
                            thresholds.boundary_area);
  const auto meanc = bounded("mean_curvature", H,
                             [](const HypothesisFlags& f) { return f.mean_curvature_bounded; },
                             thresholds.mean_curvature);
  const auto dia = bounded("diameter", diam, [](const HypothesisFlags& f) { return f.diameter_bounded; },
                           thresholds.diameter);
  auto neg = bounded("mean_curvature_negative", H,
                     [](const HypothesisFlags& f) { return f.mean_curvature_negative; }, 0.0);
  if (!neg.holds && neg.reason.rfind("exceeds", 0) == 0) {
    neg.reason = "H_max >= 0 at j=" + neg.reason.substr(neg.reason.find("j=") + 2);
  }
  const auto bdia = bounded("boundary_diameter", bdiam,
                            [](const HypothesisFlags& f) { return f.boundary_diameter_bounded; },
                            thresholds.boundary_diameter);
  v.bounded_diameter = {curv, area, meanc, dia};
  v.negative_curvature = {curv, area, neg, bdia};

  auto state = [&](const std::string& label, const std::vector<HypothesisVerdict>& hs) {
    bool all = true, uniform = true;
    for (const auto& h : hs) {
      all = all && h.holds;
      if (h.name != "curvature") {
        uniform = uniform && h.holds;
      }
    }
    if (all) {
      v.statements.push_back(label + ": all hypotheses hold over the range");
      return;
    }
    if (uniform) {
      v.statements.push_back(label + ": all uniform bounds hold over the range");
    }
    for (const auto& h : hs) {
      if (!h.holds) {
        v.statements.push_back(label + ": hypothesis " + h.name + " fails (" + h.reason + ")");
      }
    }
  };
  state("bounded-diameter compactness", v.bounded_diameter);
  state("negative-curvature compactness", v.negative_curvature);
  if (!v.failed_indices.empty()) {
    v.statements.push_back("generator failed at j=" + join_indices(v.failed_indices));
  }

  // Tail chain with the family's uniform H0 and A.
  v.tail_chain_applicable = area.holds && meanc.holds && !ok.empty();
  if (v.tail_chain_applicable) {
    const ComparisonProfile p(ok.front()->summary.n, H.max);
    const double A = bmass.max;
    bool measured_on_mesh = false;
    for (const auto* r : ok) {
      measured_on_mesh = measured_on_mesh || r->source == "mesh";
    }
    const double tol = measured_on_mesh ? 0.03 : 1e-9;
    const auto& deltas = ok.front()->deltas;
    for (std::size_t a = 0; a < ok.size(); ++a) {
      for (std::size_t b = a; b < ok.size(); ++b) {
        for (std::size_t i = 0; i < deltas.size(); ++i) {
          const double fa = ok[a]->flat_bounds[i], fb = ok[b]->flat_bounds[i];
          if (std::isnan(fa) || std::isnan(fb)) {
            continue;
          }
          const double bound = 2.0 * swif_tail(p, A, deltas[i]);
          const double margin = relative_margin(fa + fb, bound);
          ++v.tail_chain_pairs;
          v.tail_chain_worst_margin = std::min(v.tail_chain_worst_margin, margin);
          if (margin < -tol) {
            ++v.tail_chain_violations;
          }
        }
      }
    }
  }
  return v;
}

nlohmann::json SequenceVerdict::to_json() const {
  using nlohmann::json;
  json j;
  j["family"] = family;
  j["j_first"] = j_first;
  j["j_last"] = j_last;
  j["failed_indices"] = failed_indices;
  json tr = json::object();
  for (const auto& t : trends) {
    tr[t.quantity] = {{"values", t.values},
                      {"strictly_increasing", t.strictly_increasing},
                      {"growth_exponent", t.growth_exponent},
                      {"diverging", t.diverging},
                      {"max", t.max}};
  }
  j["trends"] = tr;
  auto hyp = [](const std::vector<HypothesisVerdict>& hs) {
    json o = json::object();
    for (const auto& h : hs) {
      o[h.name] = {{"holds", h.holds}, {"reason", h.reason}};
    }
    return o;
  };
  j["bounded_diameter_compactness"] = hyp(bounded_diameter);
  j["negative_curvature_compactness"] = hyp(negative_curvature);
  j["statements"] = statements;
  j["tail_chain"] = {{"applicable", tail_chain_applicable},
                     {"pairs", tail_chain_pairs},
                     {"violations", tail_chain_violations},
                     {"worst_margin", tail_chain_worst_margin}};
  j["note"] = "flat values are upper bounds on flat distances; no convergence is claimed";
  return j;
}

std::string sequence_csv(const std::vector<SequenceRecord>& records) {
  auto num = [](double x) { return std::isfinite(x) ? format_double(x) : std::string(); };
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      q += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return q + "\"";
  };
  std::vector<double> deltas;
  for (const auto& r : records) {
    if (!r.deltas.empty()) {
      deltas = r.deltas;
      break;
    }
  }
  std::ostringstream out;
  out << "family,j,status,source,mass,boundary_mass,diameter,boundary_diameter,H_max,"
         "curvature_certified,wells_flat_bound";
  for (double d : deltas) {
    out << ",flat@" << format_double(d);
  }
  for (double d : deltas) {
    out << ",tail@" << format_double(d);
  }
  out << "\n";
  for (const auto& r : records) {
    out << r.family << "," << r.j << "," << (r.ok() ? std::string("ok") : quote("error: " + r.error))
        << "," << r.source << ",";
    if (r.ok()) {
      out << num(r.summary.mass) << "," << num(r.summary.boundary_mass) << ","
          << num(r.summary.diameter) << "," << num(r.boundary_diameter) << ","
          << num(r.summary.H_max) << "," << (r.curvature_certified ? 1 : 0);
    } else {
      out << ",,,,,";
    }
    out << "," << (r.wells_flat_bound ? num(*r.wells_flat_bound) : std::string());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      out << "," << (i < r.flat_bounds.size() ? num(r.flat_bounds[i]) : std::string());
    }
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      out << "," << (i < r.tail_bounds.size() ? num(r.tail_bounds[i]) : std::string());
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::json sequence_json(const std::vector<SequenceRecord>& records) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& r : records) {
    json j;
    j["family"] = r.family;
    j["j"] = r.j;
    j["parameters"] = r.parameters;
    j["error"] = r.error;
    j["source"] = r.source;
    j["summary"] = {{"n", r.summary.n},
                    {"mass", r.summary.mass},
                    {"boundary_mass", r.summary.boundary_mass},
                    {"diameter", r.summary.diameter},
                    {"H_max", r.summary.H_max}};
    j["boundary_diameter"] = r.boundary_diameter;
    j["curvature_certified"] = r.curvature_certified;
    j["deltas"] = r.deltas;
    j["flat_bounds"] = r.flat_bounds;
    j["tail_bounds"] = r.tail_bounds;
    j["wells_flat_bound"] = r.wells_flat_bound ? json(*r.wells_flat_bound) : json(nullptr);
    j["flags"] = {{"curvature_certified", r.flags.curvature_certified},
                  {"boundary_area_bounded", r.flags.boundary_area_bounded},
                  {"mean_curvature_bounded", r.flags.mean_curvature_bounded},
                  {"mean_curvature_negative", r.flags.mean_curvature_negative},
                  {"diameter_bounded", r.flags.diameter_bounded},
                  {"boundary_diameter_bounded", r.flags.boundary_diameter_bounded}};
    arr.push_back(j);
  }
  return arr;
}

}  // namespace rcomp
