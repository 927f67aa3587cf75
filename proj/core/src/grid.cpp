#include "stokesrec/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "stokesrec/errors.hpp"

namespace stokesrec {

GridSpec GridSpec::square(double lo, double hi, int n) {
  if (!(hi > lo) || n < 2) throw invalid_input_error("bad grid bounds/resolution");
  GridSpec g;
  g.x0 = lo;
  g.y0 = lo;
  g.h = (hi - lo) / n;
  g.nx = n;
  g.ny = n;
  return g;
}

namespace {

// Edge of the cell-center lattice, keyed by its low corner and direction so
// matching endpoints stitch exactly.
struct EdgeKey {
  int i, j, dir;  // dir 0: between (i,j)-(i+1,j); dir 1: between (i,j)-(i,j+1)
  bool operator<(const EdgeKey& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return dir < o.dir;
  }
};

struct Segment {
  EdgeKey a, b;
};

double interp(double va, double vb, double level) {
  const double d = vb - va;
  if (d == 0) return 0.5;
  double t = (level - va) / d;
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

std::vector<Contour> marching_squares(const GridSpec& spec, const Eigen::ArrayXXd& values,
                                      double level) {
  const int nx = static_cast<int>(values.rows());
  const int ny = static_cast<int>(values.cols());

  std::vector<Segment> segments;
  for (int i = 0; i + 1 < nx; ++i) {
    for (int j = 0; j + 1 < ny; ++j) {
      const double v00 = values(i, j), v10 = values(i + 1, j);
      const double v01 = values(i, j + 1), v11 = values(i + 1, j + 1);
      int mask = 0;
      if (v00 > level) mask |= 1;
      if (v10 > level) mask |= 2;
      if (v11 > level) mask |= 4;
      if (v01 > level) mask |= 8;
      if (mask == 0 || mask == 15) continue;

      const EdgeKey bottom{i, j, 0}, right{i + 1, j, 1}, top{i, j + 1, 0}, left{i, j, 1};
      auto emit = [&](EdgeKey a, EdgeKey b) { segments.push_back({a, b}); };
      switch (mask) {
        case 1: case 14: emit(left, bottom); break;
        case 2: case 13: emit(bottom, right); break;
        case 3: case 12: emit(left, right); break;
        case 4: case 11: emit(right, top); break;
        case 6: case 9:  emit(bottom, top); break;
        case 7: case 8:  emit(top, left); break;
        case 5: case 10: {
          // saddle: disambiguate with the cell-center average
          const double c = 0.25 * (v00 + v10 + v01 + v11);
          const bool center_above = c > level;
          if ((mask == 5) == center_above) {
            emit(left, top);
            emit(bottom, right);
          } else {
            emit(left, bottom);
            emit(right, top);
          }
          break;
        }
        default: break;
      }
    }
  }

  // Interpolated coordinates of each used edge.
  auto edge_point = [&](const EdgeKey& e) -> cplx {
    if (e.dir == 0) {
      const double t = interp(values(e.i, e.j), values(e.i + 1, e.j), level);
      return {spec.cx(e.i) + t * spec.h, spec.cy(e.j)};
    }
    const double t = interp(values(e.i, e.j), values(e.i, e.j + 1), level);
    return {spec.cx(e.i), spec.cy(e.j) + t * spec.h};
  };

  // Stitch segments into polylines by walking shared edges.
  auto same = [](const EdgeKey& x, const EdgeKey& y) { return !(x < y) && !(y < x); };
  std::multimap<EdgeKey, size_t> by_edge;
  for (size_t s = 0; s < segments.size(); ++s) {
    by_edge.insert({segments[s].a, s});
    by_edge.insert({segments[s].b, s});
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<Contour> out;

  auto take_next = [&](const EdgeKey& e) -> long {
    auto [lo, hi] = by_edge.equal_range(e);
    for (auto it = lo; it != hi; ++it)
      if (!used[it->second]) return static_cast<long>(it->second);
    return -1;
  };

  for (size_t s0 = 0; s0 < segments.size(); ++s0) {
    if (used[s0]) continue;
    used[s0] = true;
    std::deque<EdgeKey> chain{segments[s0].a, segments[s0].b};
    for (;;) {  // forward
      const long nxt = take_next(chain.back());
      if (nxt < 0) break;
      used[nxt] = true;
      const Segment& sg = segments[nxt];
      chain.push_back(same(sg.a, chain.back()) ? sg.b : sg.a);
    }
    const bool closed = chain.size() > 3 && same(chain.front(), chain.back());
    if (!closed) {
      for (;;) {  // backward
        const long nxt = take_next(chain.front());
        if (nxt < 0) break;
        used[nxt] = true;
        const Segment& sg = segments[nxt];
        chain.push_front(same(sg.a, chain.front()) ? sg.b : sg.a);
      }
    }

    Contour c;
    c.level = level;
    c.closed = closed;
    const size_t count = closed ? chain.size() - 1 : chain.size();
    for (size_t i = 0; i < count; ++i) c.points.push_back(edge_point(chain[i]));
    if (c.points.size() >= 2) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace stokesrec
