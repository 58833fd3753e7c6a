#include "rudinlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <queue>

#include "rudinlab/errors.hpp"

namespace rudinlab {

namespace {

// Kronrod abscissae on [0,1] half-range; odd indices are the Gauss-7 nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  cplx value;
  double err;
  std::size_t seq;  // creation order breaks ties deterministically
};

struct WorstFirst {
  bool operator()(const Panel& l, const Panel& r) const {
    if (l.err != r.err) return l.err < r.err;
    return l.seq > r.seq;
  }
};

}  // namespace

QuadResult gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const cplx sum = f(c - dx) + f(c + dx);
    kron += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  QuadResult r;
  r.value = kron * h;
  r.error_estimate = std::abs((kron - gauss) * h);
  r.panels = 1;
  r.converged = true;
  return r;
}

QuadResult adaptive_gk15(const std::function<cplx(double)>& f, std::vector<double> breakpoints,
                         double abs_tol, std::size_t max_panels) {
  if (breakpoints.size() < 2) throw precondition_error("adaptive_gk15: need an interval");
  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> heap;
  std::size_t seq = 0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const auto r = gk15(f, breakpoints[i], breakpoints[i + 1]);
    heap.push({breakpoints[i], breakpoints[i + 1], r.value, r.error_estimate, seq++});
    total_err += r.error_estimate;
  }
  while (total_err > abs_tol && heap.size() < max_panels) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // panel at floating-point resolution
      heap.push(worst);
      break;
    }
    const auto left = gk15(f, worst.a, mid);
    const auto right = gk15(f, mid, worst.b);
    total_err += left.error_estimate + right.error_estimate - worst.err;
    heap.push({worst.a, mid, left.value, left.error_estimate, seq++});
    heap.push({mid, worst.b, right.value, right.error_estimate, seq++});
  }

  // Sum in interval order so the result does not depend on heap layout.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  KahanSum<cplx> value;
  KahanSum<double> err;
  for (const auto& p : panels) {
    value.add(p.value);
    err.add(p.err);
  }
  QuadResult out;
  out.value = value.value();
  out.error_estimate = err.value();
  out.panels = panels.size();
  out.converged = out.error_estimate <= abs_tol;
  return out;
}

}  // namespace rudinlab
