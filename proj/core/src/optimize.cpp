#include "qres/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <utility>

namespace qres {

namespace {

constexpr double kPi = std::numbers::pi;
// Simplex diameter at which Nelder-Mead stops once the value spread is
// below refine_tol as well.
constexpr double kSimplexXTol = 1e-7;
constexpr double kCompassMinStep = 1e-7;
constexpr double kFlatSpread = 1e-10;
constexpr double kDistinctOptimum = 1e-3;

double sign_of(Direction d) { return d == Direction::Minimize ? 1.0 : -1.0; }

// Minimization target sign * objective(x) memoized on parameters quantized
// to 1e-12.
class CachedTarget {
 public:
  using Raw = std::function<double(std::span<const double>)>;

  CachedTarget(Raw raw, double sign, SearchDiagnostics& diag)
      : raw_(std::move(raw)), sign_(sign), diag_(diag) {}

  double operator()(std::span<const double> x) {
    std::vector<long long> key(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) key[i] = std::llround(x[i] * 1e12);
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++diag_.cache_hits;
      return it->second;
    }
    ++diag_.evaluations;
    const double f = sign_ * raw_(x);
    cache_.emplace(std::move(key), f);
    return f;
  }

 private:
  Raw raw_;
  double sign_;
  SearchDiagnostics& diag_;
  std::map<std::vector<long long>, double> cache_;
};

struct LocalResult {
  std::vector<double> x;
  double f;
  int iterations;
};

template <class F>
LocalResult nelder_mead(F&& f, std::vector<double> x0, const std::vector<double>& step,
                        int max_iter, double ftol) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  int it = 0;
  for (; it < max_iter; ++it) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        diameter = std::max(diameter, std::abs(pts[i][k] - pts[best][k]));
    if (fv[worst] - fv[best] <= ftol && diameter <= kSimplexXTol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      return p;
    };

    std::vector<double> xr = along(-1.0);
    const double fr = f(xr);
    if (fr < fv[best]) {
      std::vector<double> xe = along(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = std::move(xe);
        fv[worst] = fe;
      } else {
        pts[worst] = std::move(xr);
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      pts[worst] = std::move(xr);
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    std::vector<double> xc = along(outside ? -0.5 : 0.5);
    const double fc = f(xc);
    if (fc < (outside ? fr : fv[worst])) {
      pts[worst] = std::move(xc);
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      fv[i] = f(pts[i]);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  return LocalResult{pts[best], fv[best], it};
}

template <class F>
LocalResult compass_search(F&& f, std::vector<double> x, int max_sweeps) {
  double fx = f(x);
  double step = 0.5;
  int sweeps = 0;
  for (; sweeps < max_sweeps && step > kCompassMinStep; ++sweeps) {
    bool improved = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (double s : {step, -step}) {
        x[k] += s;
        const double ft = f(x);
        if (ft < fx) {
          fx = ft;
          improved = true;
          break;
        }
        x[k] -= s;
      }
    }
    if (!improved) step *= 0.5;
  }
  return LocalResult{std::move(x), fx, sweeps};
}

// Hermitian operator basis: E_kk, (E_rc + E_cr)/sqrt2, i(E_cr - E_rc)/sqrt2.
CMatrix generator(std::span<const double> p, int n) {
  CMatrix h = CMatrix::Zero(n, n);
  std::size_t k = 0;
  const double s = 1.0 / std::numbers::sqrt2;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c, ++k) {
      if (r == c) {
        h(r, r) += p[k];
      } else if (r < c) {
        h(r, c) += s * p[k];
        h(c, r) += s * p[k];
      } else {
        h(c, r) += Complex(0.0, -s * p[k]);
        h(r, c) += Complex(0.0, s * p[k]);
      }
    }
  }
  return h;
}

struct Grid {
  int nt;
  int np;
  double theta_max;
  double theta(int i) const { return nt == 1 ? 0.0 : theta_max * i / (nt - 1); }
  double phi(int j) const { return 2.0 * kPi * j / np; }
  int size() const { return nt * np; }
  double theta_step() const { return nt == 1 ? theta_max : theta_max / (nt - 1); }
  double phi_step() const { return 2.0 * kPi / np; }
  std::vector<int> neighbours(int idx) const {
    const int i = idx / np;
    const int j = idx % np;
    std::vector<int> out;
    if (i > 0) out.push_back((i - 1) * np + j);
    if (i + 1 < nt) out.push_back((i + 1) * np + j);
    if (np > 1) {
      out.push_back(i * np + (j + 1) % np);
      out.push_back(i * np + (j + np - 1) % np);
    }
    return out;
  }
};

Grid make_grid(int nt, int np, double theta_max) {
  return Grid{std::max(1, nt), std::max(1, np), theta_max};
}

struct Candidate {
  std::vector<double> x;
  double f;
};

// Monotone acceptance; ties keep the earlier candidate.
bool improves(double f, const Candidate& incumbent) {
  if (incumbent.x.empty()) return true;
  return f < incumbent.f - 1e-14 * std::max(1.0, std::abs(incumbent.f));
}

void accept(Candidate& incumbent, const LocalResult& r) {
  if (improves(r.f, incumbent)) {
    incumbent = Candidate{r.x, r.f};
  }
}

void finish_diagnostics(SearchDiagnostics& diag, double sign, double grid_min, double grid_max) {
  diag.grid_best = sign * grid_min;
  diag.flat = (grid_max - grid_min) <= kFlatSpread;
}

// Distinct optima must differ in their projectors by more than 1e-3.
template <class Dist>
double second_best_gap(const Candidate& best, const std::vector<Candidate>& found, Dist&& dist) {
  double gap = std::numeric_limits<double>::infinity();
  for (const Candidate& c : found) {
    if (dist(c.x, best.x) > kDistinctOptimum) gap = std::min(gap, c.f - best.f);
  }
  return gap;
}

BasisSearchResult qubit_basis_search(const BasisObjective& objective, Subsystem subsystem,
                                     Direction direction, const SearchConfig& cfg,
                                     std::span<const ObservableBasis> hints) {
  SearchDiagnostics diag;
  const double sign = sign_of(direction);
  CachedTarget target(
      [&](std::span<const double> x) { return objective(qubit_basis(x[0], x[1], subsystem)); },
      sign, diag);

  const Grid grid = make_grid(cfg.grid_theta, cfg.grid_phi, kPi);
  std::vector<double> vals(static_cast<std::size_t>(grid.size()));
  int best_idx = 0;
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (int idx = 0; idx < grid.size(); ++idx) {
    const std::vector<double> x{grid.theta(idx / grid.np), grid.phi(idx % grid.np)};
    const double f = target(x);
    vals[static_cast<std::size_t>(idx)] = f;
    if (f < vals[static_cast<std::size_t>(best_idx)]) best_idx = idx;
    vmin = std::min(vmin, f);
    vmax = std::max(vmax, f);
  }
  diag.grid_points = static_cast<std::size_t>(grid.size());
  finish_diagnostics(diag, sign, vmin, vmax);

  auto grid_x = [&](int idx) {
    return std::vector<double>{grid.theta(idx / grid.np), grid.phi(idx % grid.np)};
  };
  if (diag.flat) {
    return BasisSearchResult{sign * vals[0], qubit_basis(grid.theta(0), grid.phi(0), subsystem),
                             diag};
  }

  std::vector<int> minima;
  for (int idx = 0; idx < grid.size(); ++idx) {
    bool local = true;
    for (int nb : grid.neighbours(idx)) {
      if (vals[static_cast<std::size_t>(nb)] < vals[static_cast<std::size_t>(idx)]) {
        local = false;
        break;
      }
    }
    if (local) minima.push_back(idx);
  }
  std::stable_sort(minima.begin(), minima.end(), [&](int a, int b) {
    return vals[static_cast<std::size_t>(a)] < vals[static_cast<std::size_t>(b)];
  });

  std::vector<std::vector<double>> starts;
  for (const ObservableBasis& h : hints) {
    const auto [t, p] = qubit_angles(h);
    starts.push_back({t, p});
  }
  for (std::size_t k = 0; k < minima.size() && static_cast<int>(k) < cfg.refine_starts; ++k) {
    starts.push_back(grid_x(minima[k]));
  }

  Candidate incumbent{grid_x(best_idx), vals[static_cast<std::size_t>(best_idx)]};
  std::vector<Candidate> found;
  const std::vector<double> step{grid.theta_step(), grid.phi_step()};
  for (const auto& x0 : starts) {
    LocalResult r = nelder_mead(target, x0, step, cfg.refine_iters, cfg.refine_tol);
    diag.refine_iterations += r.iterations;
    ++diag.starts;
    found.push_back(Candidate{r.x, r.f});
    accept(incumbent, r);
  }
  ObservableBasis best = qubit_basis(incumbent.x[0], incumbent.x[1], subsystem);
  diag.second_best_gap = second_best_gap(
      incumbent, found, [&](const std::vector<double>& a, const std::vector<double>&) {
        return qubit_basis(a[0], a[1], subsystem).projector_distance(best);
      });
  return BasisSearchResult{sign * incumbent.f, std::move(best), diag};
}

BasisSearchResult qudit_basis_search(const BasisObjective& objective, int n, Subsystem subsystem,
                                     Direction direction, const SearchConfig& cfg,
                                     std::span<const ObservableBasis> hints) {
  SearchDiagnostics diag;
  const double sign = sign_of(direction);
  std::vector<CMatrix> anchors;
  anchors.push_back(CMatrix::Identity(n, n));
  anchors.push_back(fourier_basis(n).unitary());
  for (const ObservableBasis& h : hints) anchors.push_back(h.unitary());
  std::mt19937_64 rng(cfg.seed);
  for (int r = 0; r < cfg.random_restarts; ++r) anchors.push_back(haar_unitary(n, rng));

  const std::size_t np = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  Candidate incumbent{{}, std::numeric_limits<double>::infinity()};
  std::size_t incumbent_anchor = 0;
  std::vector<Candidate> found;
  std::vector<std::size_t> found_anchor;
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    const CMatrix& w = anchors[a];
    CachedTarget target(
        [&](std::span<const double> x) {
          return objective(ObservableBasis(w * generator_unitary(x, n), subsystem));
        },
        sign, diag);
    const std::vector<double> zero(np, 0.0);
    const double f0 = target(zero);
    vmin = std::min(vmin, f0);
    vmax = std::max(vmax, f0);
    ++diag.grid_points;
    LocalResult r = compass_search(target, zero, cfg.refine_iters);
    diag.refine_iterations += r.iterations;
    ++diag.starts;
    found.push_back(Candidate{r.x, r.f});
    found_anchor.push_back(a);
    if (improves(r.f, incumbent)) {
      incumbent = Candidate{r.x, r.f};
      incumbent_anchor = a;
    }
  }
  finish_diagnostics(diag, sign, vmin, vmax);
  auto basis_of = [&](std::size_t anchor, const std::vector<double>& x) {
    return ObservableBasis(anchors[anchor] * generator_unitary(x, n), subsystem);
  };
  ObservableBasis best = basis_of(incumbent_anchor, incumbent.x);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < found.size(); ++k) {
    if (basis_of(found_anchor[k], found[k].x).projector_distance(best) > kDistinctOptimum) {
      gap = std::min(gap, found[k].f - incumbent.f);
    }
  }
  diag.second_best_gap = gap;
  return BasisSearchResult{sign * incumbent.f, std::move(best), diag};
}

Context qubit_context(std::span<const double> x) {
  return Context{qubit_basis(x[0], x[1], Subsystem::A), qubit_basis(x[2], x[3], Subsystem::B)};
}

ContextSearchResult qubit_context_search(const ContextObjective& objective, Direction direction,
                                         const SearchConfig& cfg, std::span<const Context> hints) {
  SearchDiagnostics diag;
  const double sign = sign_of(direction);
  CachedTarget target([&](std::span<const double> x) { return objective(qubit_context(x)); }, sign,
                      diag);

  const Grid grid = make_grid(cfg.context_grid_theta, cfg.context_grid_phi, kPi / 2.0);
  const int m = grid.size();
  std::vector<ObservableBasis> side_a;
  std::vector<ObservableBasis> side_b;
  for (int idx = 0; idx < m; ++idx) {
    side_a.push_back(qubit_basis(grid.theta(idx / grid.np), grid.phi(idx % grid.np), Subsystem::A));
    side_b.push_back(side_a.back().on(Subsystem::B));
  }
  auto pair_x = [&](int ia, int ib) {
    return std::vector<double>{grid.theta(ia / grid.np), grid.phi(ia % grid.np),
                               grid.theta(ib / grid.np), grid.phi(ib % grid.np)};
  };

  std::vector<double> vals(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  std::size_t best_idx = 0;
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (int ia = 0; ia < m; ++ia) {
    for (int ib = 0; ib < m; ++ib) {
      const std::size_t idx = static_cast<std::size_t>(ia) * m + ib;
      // the grid bypasses the cache: every pair is distinct
      ++diag.evaluations;
      const double f = sign * objective(Context{side_a[static_cast<std::size_t>(ia)],
                                                side_b[static_cast<std::size_t>(ib)]});
      vals[idx] = f;
      if (f < vals[best_idx]) best_idx = idx;
      vmin = std::min(vmin, f);
      vmax = std::max(vmax, f);
    }
  }
  diag.grid_points = vals.size();
  finish_diagnostics(diag, sign, vmin, vmax);
  if (diag.flat) {
    return ContextSearchResult{sign * vals[0], Context{side_a[0], side_b[0]}, diag};
  }

  std::vector<std::size_t> minima;
  for (std::size_t idx = 0; idx < vals.size(); ++idx) {
    const int ia = static_cast<int>(idx / m);
    const int ib = static_cast<int>(idx % m);
    bool local = true;
    for (int na : grid.neighbours(ia)) {
      if (vals[static_cast<std::size_t>(na) * m + ib] < vals[idx]) { local = false; break; }
    }
    if (local) {
      for (int nb : grid.neighbours(ib)) {
        if (vals[static_cast<std::size_t>(ia) * m + nb] < vals[idx]) { local = false; break; }
      }
    }
    if (local) minima.push_back(idx);
  }
  std::stable_sort(minima.begin(), minima.end(),
                   [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

  std::vector<std::vector<double>> starts;
  for (const Context& h : hints) {
    const auto [ta, pa] = qubit_angles(h.a);
    const auto [tb, pb] = qubit_angles(h.b);
    starts.push_back({ta, pa, tb, pb});
  }
  for (std::size_t k = 0; k < minima.size() && static_cast<int>(k) < cfg.refine_starts; ++k) {
    starts.push_back(pair_x(static_cast<int>(minima[k] / m), static_cast<int>(minima[k] % m)));
  }

  Candidate incumbent{pair_x(static_cast<int>(best_idx / m), static_cast<int>(best_idx % m)),
                      vals[best_idx]};
  std::vector<Candidate> found;
  const std::vector<double> step2{grid.theta_step(), grid.phi_step()};
  const std::vector<double> step4{grid.theta_step(), grid.phi_step(), grid.theta_step(),
                                  grid.phi_step()};
  for (const auto& x0 : starts) {
    std::vector<double> x = x0;
    double fx = target(x);
    for (int round = 0; round < cfg.refine_iters; ++round) {
      const double before = fx;
      // fix A, refine B
      LocalResult rb = nelder_mead(
          [&](const std::vector<double>& y) { return target(std::vector<double>{x[0], x[1], y[0], y[1]}); },
          {x[2], x[3]}, step2, cfg.refine_iters, cfg.refine_tol);
      diag.refine_iterations += rb.iterations;
      if (rb.f < fx) { x[2] = rb.x[0]; x[3] = rb.x[1]; fx = rb.f; }
      // fix B, refine A
      LocalResult ra = nelder_mead(
          [&](const std::vector<double>& y) { return target(std::vector<double>{y[0], y[1], x[2], x[3]}); },
          {x[0], x[1]}, step2, cfg.refine_iters, cfg.refine_tol);
      diag.refine_iterations += ra.iterations;
      if (ra.f < fx) { x[0] = ra.x[0]; x[1] = ra.x[1]; fx = ra.f; }
      if (before - fx < cfg.refine_tol) break;
    }
    std::vector<double> polish_step = step4;
    for (double& s : polish_step) s *= 0.1;
    LocalResult joint = nelder_mead(target, x, polish_step, cfg.refine_iters, cfg.refine_tol);
    diag.refine_iterations += joint.iterations;
    LocalResult r = joint.f < fx ? joint : LocalResult{x, fx, 0};
    ++diag.starts;
    found.push_back(Candidate{r.x, r.f});
    accept(incumbent, r);
  }
  Context best = qubit_context(incumbent.x);
  diag.second_best_gap = second_best_gap(
      incumbent, found, [&](const std::vector<double>& a, const std::vector<double>&) {
        const Context c = qubit_context(a);
        return std::max(c.a.projector_distance(best.a), c.b.projector_distance(best.b));
      });
  return ContextSearchResult{sign * incumbent.f, std::move(best), diag};
}

ContextSearchResult qudit_context_search(const ContextObjective& objective, const Dims& dims,
                                         Direction direction, const SearchConfig& cfg,
                                         std::span<const Context> hints) {
  SearchDiagnostics diag;
  const double sign = sign_of(direction);
  const int na = dims.a();
  const int nb = dims.b();
  std::vector<std::pair<CMatrix, CMatrix>> anchors;
  const CMatrix ia = CMatrix::Identity(na, na);
  const CMatrix ib = CMatrix::Identity(nb, nb);
  const CMatrix fa = fourier_basis(na).unitary();
  const CMatrix fb = fourier_basis(nb).unitary();
  anchors.emplace_back(ia, ib);
  anchors.emplace_back(fa, fb);
  anchors.emplace_back(ia, fb);
  anchors.emplace_back(fa, ib);
  for (const Context& h : hints) anchors.emplace_back(h.a.unitary(), h.b.unitary());
  std::mt19937_64 rng(cfg.seed);
  for (int r = 0; r < cfg.random_restarts; ++r) {
    CMatrix ua = haar_unitary(na, rng);
    CMatrix ub = haar_unitary(nb, rng);
    anchors.emplace_back(std::move(ua), std::move(ub));
  }
  const std::size_t pa = static_cast<std::size_t>(na * na);
  const std::size_t pb = static_cast<std::size_t>(nb * nb);
  auto context_of = [&](std::size_t anchor, std::span<const double> x) {
    return Context{
        ObservableBasis(anchors[anchor].first * generator_unitary(x.subspan(0, pa), na), Subsystem::A),
        ObservableBasis(anchors[anchor].second * generator_unitary(x.subspan(pa, pb), nb), Subsystem::B)};
  };

  Candidate incumbent{{}, std::numeric_limits<double>::infinity()};
  std::size_t incumbent_anchor = 0;
  std::vector<Candidate> found;
  std::vector<std::size_t> found_anchor;
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    CachedTarget target([&](std::span<const double> x) { return objective(context_of(a, x)); },
                        sign, diag);
    const std::vector<double> zero(pa + pb, 0.0);
    const double f0 = target(zero);
    vmin = std::min(vmin, f0);
    vmax = std::max(vmax, f0);
    ++diag.grid_points;
    LocalResult r = compass_search(target, zero, cfg.refine_iters);
    diag.refine_iterations += r.iterations;
    ++diag.starts;
    found.push_back(Candidate{r.x, r.f});
    found_anchor.push_back(a);
    if (improves(r.f, incumbent)) {
      incumbent = Candidate{r.x, r.f};
      incumbent_anchor = a;
    }
  }
  finish_diagnostics(diag, sign, vmin, vmax);
  Context best = context_of(incumbent_anchor, incumbent.x);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < found.size(); ++k) {
    const Context c = context_of(found_anchor[k], found[k].x);
    const double dist = std::max(c.a.projector_distance(best.a), c.b.projector_distance(best.b));
    if (dist > kDistinctOptimum) gap = std::min(gap, found[k].f - incumbent.f);
  }
  diag.second_best_gap = gap;
  return ContextSearchResult{sign * incumbent.f, std::move(best), diag};
}

}  // namespace

ObservableBasis qubit_basis(double theta, double phi, Subsystem subsystem) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  CMatrix u(2, 2);
  u(0, 0) = c;
  u(1, 0) = e * s;
  u(0, 1) = -std::conj(e) * s;
  u(1, 1) = c;
  return ObservableBasis(u, subsystem);
}

std::pair<double, double> qubit_angles(const ObservableBasis& basis) {
  if (basis.dim() != 2) {
    throw Error(ErrorKind::DimensionUnsupported, "Bloch angles need a qubit basis");
  }
  const CVector v = basis.vector(0);
  const double theta = 2.0 * std::atan2(std::abs(v(1)), std::abs(v(0)));
  double phi = 0.0;
  if (std::abs(v(1)) > 1e-14 && std::abs(v(0)) > 1e-14) {
    phi = std::arg(v(1)) - std::arg(v(0));
  } else if (std::abs(v(1)) > 1e-14) {
    phi = std::arg(v(1));
  }
  return {theta, phi};
}

CMatrix generator_unitary(std::span<const double> params, int n) {
  if (params.size() != static_cast<std::size_t>(n * n)) {
    throw Error(ErrorKind::DimensionMismatch, "generator needs n^2 parameters");
  }
  bool zero = true;
  for (double p : params) zero = zero && p == 0.0;
  if (zero) return CMatrix::Identity(n, n);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(generator(params, n));
  CVector phases(n);
  for (int k = 0; k < n; ++k) phases(k) = std::polar(1.0, es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

BasisSearchResult optimize_basis(const BasisObjective& objective, int dim, Subsystem subsystem,
                                 Direction direction, const SearchConfig& cfg,
                                 std::span<const ObservableBasis> hints) {
  if (dim < 2) throw Error(ErrorKind::DimensionMismatch, "basis search needs dim >= 2");
  if (dim == 2) return qubit_basis_search(objective, subsystem, direction, cfg, hints);
  return qudit_basis_search(objective, dim, subsystem, direction, cfg, hints);
}

ContextSearchResult optimize_context(const ContextObjective& objective, const Dims& dims,
                                     Direction direction, const SearchConfig& cfg,
                                     std::span<const Context> hints) {
  if (!dims.bipartite()) throw Error(ErrorKind::NotBipartite, "context search needs two parties");
  if (dims.a() == 2 && dims.b() == 2) return qubit_context_search(objective, direction, cfg, hints);
  return qudit_context_search(objective, dims, direction, cfg, hints);
}

double brute_force_grid(const BasisObjective& objective, int dim, Subsystem subsystem,
                        Direction direction, GridResolution resolution) {
  if (dim != 2) throw Error(ErrorKind::DimensionUnsupported, "brute-force grid is qubit-only");
  const Grid grid = make_grid(resolution.theta, resolution.phi, kPi);
  const double sign = sign_of(direction);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.nt; ++i) {
    for (int j = 0; j < grid.np; ++j) {
      best = std::min(best, sign * objective(qubit_basis(grid.theta(i), grid.phi(j), subsystem)));
    }
  }
  return sign * best;
}

double brute_force_grid(const ContextObjective& objective, const Dims& dims, Direction direction,
                        GridResolution resolution) {
  if (dims.a() != 2 || dims.b() != 2) {
    throw Error(ErrorKind::DimensionUnsupported, "brute-force context grid is two-qubit only");
  }
  const Grid grid = make_grid(resolution.theta, resolution.phi, kPi / 2.0);
  std::vector<ObservableBasis> side_a;
  std::vector<ObservableBasis> side_b;
  for (int i = 0; i < grid.nt; ++i) {
    for (int j = 0; j < grid.np; ++j) {
      side_a.push_back(qubit_basis(grid.theta(i), grid.phi(j), Subsystem::A));
      side_b.push_back(side_a.back().on(Subsystem::B));
    }
  }
  const double sign = sign_of(direction);
  double best = std::numeric_limits<double>::infinity();
  // one Context reused across the product; assigning equal-size bases does not allocate
  Context ctx{side_a.front(), side_b.front()};
  for (const ObservableBasis& a : side_a) {
    ctx.a = a;
    for (const ObservableBasis& b : side_b) {
      ctx.b = b;
      best = std::min(best, sign * objective(ctx));
    }
  }
  return sign * best;
}

}  // namespace qres
