#include "faberelast/conformal_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "faberelast/errors.hpp"

namespace faberelast {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr double kCriticalDerivative = 1e-8;
constexpr int kRadialSamples = 64;
constexpr int kAngularSamples = 512;
constexpr int kBoundarySegments = 2048;
constexpr double kOuterRadius = 4.0;

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Proper or touching intersection of closed segments [p1,p2] and [q1,q2].
bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_segment = [](cplx a, cplx b, cplx p) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
  };
  if (d1 == 0 && on_segment(p1, p2, q1)) return true;
  if (d2 == 0 && on_segment(p1, p2, q2)) return true;
  if (d3 == 0 && on_segment(q1, q2, p1)) return true;
  if (d4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

ExteriorMap::ExteriorMap() : coeffs_{0.0} {}

ExteriorMap::ExteriorMap(std::vector<cplx> coefficients, double conformal_radius)
    : coeffs_(std::move(coefficients)) {
  if (conformal_radius != 1.0) {
    throw DomainError("conformal radius must be exactly 1; rescale z -> z/R first");
  }
  for (const cplx& a : coeffs_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ArgumentError("map coefficients must be finite");
  }
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  while (coeffs_.size() > 1 && coeffs_.back() == cplx(0.0)) coeffs_.pop_back();
}

void ExteriorMap::check_domain(cplx w) const {
  if (std::abs(w) < 1.0 - kDomainSlack) {
    std::ostringstream msg;
    msg << "exterior map evaluated inside the unit disk (|w| = " << std::abs(w) << ")";
    throw DomainError(msg.str());
  }
}

cplx ExteriorMap::eval_unchecked(cplx w) const {
  const cplx inv = 1.0 / w;
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inv + *it;
  return w + acc;
}

cplx ExteriorMap::eval_derivative_unchecked(cplx w) const {
  // 1 - sum_{k>=1} k a_k w^{-k-1} = 1 - w^{-2} sum_{k>=1} k a_k w^{-(k-1)}
  const cplx inv = 1.0 / w;
  cplx acc = 0.0;
  for (int k = order(); k >= 1; --k) acc = acc * inv + static_cast<double>(k) * coeffs_[k];
  return 1.0 - acc * inv * inv;
}

cplx ExteriorMap::eval(cplx w) const {
  check_domain(w);
  return eval_unchecked(w);
}

cplx ExteriorMap::eval_derivative(cplx w) const {
  check_domain(w);
  return eval_derivative_unchecked(w);
}

cplx ExteriorMap::boundary_point(double theta) const {
  return eval_unchecked(std::polar(1.0, theta));
}

double ExteriorMap::scale_factor(double rho, double theta) const {
  const cplx w = std::polar(std::exp(rho), theta);
  return std::abs(w * eval_derivative(w));
}

std::string UnivalenceReport::summary() const {
  std::ostringstream out;
  out << (passed ? "univalence check passed" : "univalence check FAILED");
  if (!critical_points.empty())
    out << "; " << critical_points.size() << " grid points with |Psi'| < 1e-8";
  if (derivative_winding != 0) out << "; Psi' winding number on |w|=1 is " << derivative_winding;
  if (!intersecting_segments.empty())
    out << "; " << intersecting_segments.size() << " intersecting boundary segment pairs (first: "
        << intersecting_segments.front().first << "," << intersecting_segments.front().second << ")";
  if (signed_area <= 0.0) out << "; boundary is not positively oriented (area " << signed_area << ")";
  return out.str();
}

UnivalenceReport validate_univalence(const ExteriorMap& map) {
  UnivalenceReport report;

  for (int i = 0; i < kRadialSamples; ++i) {
    const double r = 1.0 + (kOuterRadius - 1.0) * i / (kRadialSamples - 1);
    for (int j = 0; j < kAngularSamples; ++j) {
      const cplx w = std::polar(r, kTwoPi * j / kAngularSamples);
      if (std::abs(map.eval_derivative_unchecked(w)) < kCriticalDerivative)
        report.critical_points.push_back(w);
    }
  }

  // Argument principle: the number of zeros of Psi' in |w| > 1 equals minus
  // the winding of Psi'(e^{i theta}) about the origin.
  {
    double total = 0.0;
    bool touches_zero = false;
    cplx prev = map.eval_derivative_unchecked(1.0);
    for (int j = 1; j <= kBoundarySegments; ++j) {
      const cplx w = std::polar(1.0, kTwoPi * j / kBoundarySegments);
      const cplx cur = map.eval_derivative_unchecked(w);
      if (std::abs(cur) < kCriticalDerivative) {
        touches_zero = true;
        report.critical_points.push_back(w);
      } else if (std::abs(prev) >= kCriticalDerivative) {
        total += std::arg(cur / prev);
      }
      prev = cur;
    }
    if (!touches_zero) report.derivative_winding = static_cast<int>(std::lround(total / kTwoPi));
  }

  std::vector<cplx> pts(kBoundarySegments);
  for (int j = 0; j < kBoundarySegments; ++j) pts[j] = map.boundary_point(kTwoPi * j / kBoundarySegments);

  double area = 0.0;
  for (int j = 0; j < kBoundarySegments; ++j) area += cross(pts[j], pts[(j + 1) % kBoundarySegments]);
  report.signed_area = 0.5 * area;

  // Bounding-box sort keeps the all-pairs test cheap on well-separated curves.
  struct Seg {
    int index;
    double xmin, xmax, ymin, ymax;
  };
  std::vector<Seg> segs(kBoundarySegments);
  for (int j = 0; j < kBoundarySegments; ++j) {
    const cplx p = pts[j], q = pts[(j + 1) % kBoundarySegments];
    segs[j] = {j, std::min(p.real(), q.real()), std::max(p.real(), q.real()),
               std::min(p.imag(), q.imag()), std::max(p.imag(), q.imag())};
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.xmin < b.xmin; });
  for (std::size_t u = 0; u < segs.size(); ++u) {
    for (std::size_t v = u + 1; v < segs.size() && segs[v].xmin <= segs[u].xmax; ++v) {
      const int i = segs[u].index, j = segs[v].index;
      const int gap = std::abs(i - j);
      if (gap <= 1 || gap == kBoundarySegments - 1) continue;  // neighbours share an endpoint
      if (segs[v].ymin > segs[u].ymax || segs[v].ymax < segs[u].ymin) continue;
      if (segments_intersect(pts[i], pts[(i + 1) % kBoundarySegments], pts[j],
                             pts[(j + 1) % kBoundarySegments])) {
        report.intersecting_segments.emplace_back(std::min(i, j), std::max(i, j));
      }
    }
  }
  std::sort(report.intersecting_segments.begin(), report.intersecting_segments.end());

  report.passed = report.critical_points.empty() && report.derivative_winding == 0 &&
                  report.intersecting_segments.empty() && report.signed_area > 0.0;
  return report;
}

}  // namespace faberelast
