#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "revfid/errors.hpp"
#include "revfid/geometry.hpp"
#include "revfid/random.hpp"

namespace revfid {

namespace {

constexpr std::array<double, 5> kNodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                         0.4786286704993665, 0.2369268850561891};
constexpr int kSubpanels = 2;
constexpr double kInitialStep = 0.05;
constexpr int kShrinkLevels = 12;

struct Node {
  double weight;
  double left;   // hat weight of the segment's left knot
  double right;  // hat weight of the right knot
  Matrix g0;     // N diag(u_t)
  Matrix dg0;    // N diag(u'_t)
};

// rho_t = G G^dagger / tr(G G^dagger) with G = N diag(u_t) + Delta(t) and
// Delta piecewise linear over interior knots, zero at both ends.
class PathChart {
 public:
  PathChart(const FminGeodesic& g, int knots) : knots_(knots), dim_(g.prep().rows()) {
    const double seg = 1.0 / (knots + 1);
    segments_.resize(static_cast<std::size_t>(knots + 1));
    for (int s = 0; s <= knots; ++s) {
      for (int sub = 0; sub < kSubpanels; ++sub) {
        const double h = seg / kSubpanels;
        const double lo = s * seg + sub * h;
        for (std::size_t q = 0; q < kNodes.size(); ++q) {
          const double t = lo + 0.5 * h * (1.0 + kNodes[q]);
          const double local = (t - s * seg) / seg;
          const RealVector u = g.amplitude(t);
          const RealVector du = g.amplitude_velocity(t);
          segments_[static_cast<std::size_t>(s)].push_back(
              {0.5 * h * kWeights[q], 1.0 - local, local,
               g.prep() * u.cast<Complex>().asDiagonal(), g.prep() * du.cast<Complex>().asDiagonal()});
        }
      }
    }
    deltas_.assign(static_cast<std::size_t>(knots + 2), Matrix::Zero(dim_, dim_));
  }

  int knots() const noexcept { return knots_; }
  Eigen::Index dim() const noexcept { return dim_; }

  // Knot k in 1..knots.
  Complex& entry(int k, Eigen::Index i, Eigen::Index j) { return deltas_[static_cast<std::size_t>(k)](i, j); }

  double segment_length(int s) const {
    const Matrix& dl = deltas_[static_cast<std::size_t>(s)];
    const Matrix& dr = deltas_[static_cast<std::size_t>(s + 1)];
    const Matrix slope = (dr - dl) * static_cast<double>(knots_ + 1);
    double total = 0.0;
    for (const auto& n : segments_[static_cast<std::size_t>(s)]) {
      const Matrix g = n.g0 + n.left * dl + n.right * dr;
      const Matrix dg = n.dg0 + slope;
      const Matrix m = g * g.adjoint();
      const Matrix dm = dg * g.adjoint() + g * dg.adjoint();
      const double tr = m.trace().real();
      const double dtr = dm.trace().real();
      const Matrix rho = m / tr;
      const Matrix drho = dm / tr - m * (dtr / (tr * tr));
      Eigen::LLT<Matrix> llt(rho);
      if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
      const Matrix z = llt.matrixL().solve(drho);
      total += n.weight * z.norm();  // sqrt(tr drho rho^-1 drho)
    }
    return total;
  }

 private:
  int knots_;
  Eigen::Index dim_;
  std::vector<std::vector<Node>> segments_;
  std::vector<Matrix> deltas_;
};

}  // namespace

FrEstimate fr_estimate_report(const DensityMatrix& rho, const DensityMatrix& sigma, int control_points,
                              int iterations, std::uint64_t seed) {
  if (control_points < 1) throw ValidationError("fr_estimate: control_points must be at least 1");
  if (iterations < 0) throw ValidationError("fr_estimate: iterations must be non-negative");
  const FminGeodesic geodesic(rho, sigma);
  FrEstimate out;
  out.seed_length = geodesic.length();
  if (geodesic.theta() < 1e-12) {
    out.length = out.seed_length;
    out.value = std::cos(0.5 * out.length);
    return out;
  }

  PathChart chart(geodesic, control_points);
  std::vector<double> seg(static_cast<std::size_t>(control_points + 1));
  for (int s = 0; s <= control_points; ++s) seg[static_cast<std::size_t>(s)] = chart.segment_length(s);
  out.evaluations = 1;
  double best = std::accumulate(seg.begin(), seg.end(), 0.0);

  struct Coordinate {
    int knot;
    Eigen::Index i, j;
    bool imaginary;
    double step = kInitialStep;
    int shrinks = 0;
  };
  std::vector<Coordinate> coords;
  const auto d = chart.dim();
  for (int k = 1; k <= control_points; ++k)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (bool im : {false, true}) coords.push_back({k, i, j, im});

  Rng rng(seed, 0x66725f65ull);
  std::vector<std::size_t> order(coords.size());
  std::iota(order.begin(), order.end(), 0);

  // Changing knot k touches segments k-1 and k only.
  auto trial = [&](Coordinate& c, double delta) {
    Complex& e = chart.entry(c.knot, c.i, c.j);
    const Complex saved = e;
    e += c.imaginary ? Complex(0.0, delta) : Complex(delta, 0.0);
    const auto a = static_cast<std::size_t>(c.knot - 1);
    const auto b = static_cast<std::size_t>(c.knot);
    const double la = chart.segment_length(c.knot - 1);
    const double lb = chart.segment_length(c.knot);
    ++out.evaluations;
    const double candidate = best - seg[a] - seg[b] + la + lb;
    if (candidate < best) {
      seg[a] = la;
      seg[b] = lb;
      best = std::accumulate(seg.begin(), seg.end(), 0.0);
      ++out.accepted_moves;
      return true;
    }
    e = saved;
    return false;
  };

  for (int it = 0; it < iterations; ++it) {
    std::shuffle(order.begin(), order.end(), rng.engine());
    bool active = false;
    for (std::size_t idx : order) {
      auto& c = coords[idx];
      if (c.shrinks >= kShrinkLevels) continue;
      active = true;
      if (trial(c, c.step) || trial(c, -c.step)) continue;
      c.step *= 0.5;
      ++c.shrinks;
    }
    if (!active) break;
  }

  out.length = std::min(out.seed_length, best);
  out.value = std::cos(0.5 * out.length);
  return out;
}

}  // namespace revfid
