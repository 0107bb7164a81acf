#include "wellkit/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace wellkit {

Filtration sublevel_filtration(const SampledMap& map, const TargetPoint& a) {
  struct Raw {
    int dim;
    double value;
    int a = -1, b = -1, c = -1;  // vertex ids (vertex: a; edge: a,b; triangle: a,b,c)
    int insert_id;
  };
  std::vector<Raw> raw;
  int nv = map.vertex_count();
  std::vector<double> w(nv);
  for (int v = 0; v < nv; ++v) w[v] = map.well_value(v, a);
  raw.reserve(nv + map.edges.size() + map.tris.size());
  for (int v = 0; v < nv; ++v) raw.push_back({0, w[v], v, -1, -1, (int)raw.size()});
  for (const auto& e : map.edges)
    raw.push_back({1, std::max(w[e[0]], w[e[1]]), e[0], e[1], -1, (int)raw.size()});
  for (const auto& t : map.tris)
    raw.push_back({2, std::max({w[t[0]], w[t[1]], w[t[2]]}), t[0], t[1], t[2], (int)raw.size()});
  std::sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.dim != y.dim) return x.dim < y.dim;
    return x.insert_id < y.insert_id;
  });
  std::vector<int> vertex_pos(nv, -1);
  std::map<std::pair<int, int>, int> edge_pos;
  Filtration f;
  f.cells.reserve(raw.size());
  auto key = [](int u, int v) { return std::make_pair(std::min(u, v), std::max(u, v)); };
  for (const Raw& r : raw) {
    FiltrationCell cell;
    cell.dim = r.dim;
    cell.value = r.value;
    if (r.dim == 0) {
      vertex_pos[r.a] = (int)f.cells.size();
    } else if (r.dim == 1) {
      cell.boundary = {vertex_pos[r.a], vertex_pos[r.b]};
      edge_pos[key(r.a, r.b)] = (int)f.cells.size();
    } else {
      cell.boundary = {edge_pos.at(key(r.a, r.b)), edge_pos.at(key(r.b, r.c)),
                       edge_pos.at(key(r.c, r.a))};
    }
    std::sort(cell.boundary.begin(), cell.boundary.end());
    f.cells.push_back(std::move(cell));
  }
  return f;
}

void validate(const Filtration& f) {
  for (size_t i = 0; i < f.cells.size(); ++i) {
    const FiltrationCell& c = f.cells[i];
    if (i > 0 && c.value < f.cells[i - 1].value)
      throw std::invalid_argument("filtration values decrease along the order");
    if (c.dim < 0 || c.dim > 2) throw std::invalid_argument("filtration cell dim out of range");
    if ((c.dim == 0 && !c.boundary.empty()) || (c.dim == 1 && c.boundary.size() != 2) ||
        (c.dim == 2 && c.boundary.size() != 3))
      throw std::invalid_argument("filtration boundary arity mismatch");
    for (int b : c.boundary) {
      if (b < 0 || b >= (int)i) throw std::invalid_argument("boundary cell does not precede coface");
      if (f.cells[b].dim != c.dim - 1) throw std::invalid_argument("boundary dimension mismatch");
    }
  }
}

PersistenceDiagram reduce(const Filtration& f) {
  validate(f);
  int n = (int)f.cells.size();
  std::vector<std::vector<int>> col(n);
  std::vector<int> owner_of_low(n, -1);  // column whose low is this cell
  std::vector<char> is_creator(n, 0);
  PersistenceDiagram out;
  auto sym_diff = [](std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    r.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    a = std::move(r);
  };
  for (int j = 0; j < n; ++j) {
    col[j] = f.cells[j].boundary;
    while (!col[j].empty() && owner_of_low[col[j].back()] >= 0)
      sym_diff(col[j], col[owner_of_low[col[j].back()]]);
    if (col[j].empty()) {
      is_creator[j] = 1;
    } else {
      int low = col[j].back();
      owner_of_low[low] = j;
      out.pairs.push_back({f.cells[low].dim, f.cells[low].value, f.cells[j].value});
    }
  }
  for (int j = 0; j < n; ++j)
    if (is_creator[j] && owner_of_low[j] < 0)
      out.pairs.push_back({f.cells[j].dim, f.cells[j].value, kInf});
  std::sort(out.pairs.begin(), out.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return out;
}

std::vector<double> critical_values(const PersistenceDiagram& d) {
  std::vector<double> vals;
  for (const PersistencePair& p : d.pairs) {
    if (p.birth == p.death) continue;
    vals.push_back(p.birth);
    if (std::isfinite(p.death)) vals.push_back(p.death);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

namespace {

double point_cost(const PersistencePair& p, const PersistencePair& q) {
  if (p.dim != q.dim) return kInf;
  bool pinf = !std::isfinite(p.death), qinf = !std::isfinite(q.death);
  if (pinf != qinf) return kInf;
  double db = std::abs(p.birth - q.birth);
  if (pinf) return db;  // inf - inf counts as zero
  return std::max(db, std::abs(p.death - q.death));
}

double diagonal_cost(const PersistencePair& p) {
  if (!std::isfinite(p.death)) return kInf;
  return (p.death - p.birth) / 2.0;
}

// Kuhn's augmenting path matching on a boolean cost-threshold graph.
struct Matcher {
  int nl, nr;
  std::vector<std::vector<char>> adj;
  std::vector<int> match_r;
  std::vector<char> used;

  bool try_kuhn(int v) {
    for (int to = 0; to < nr; ++to) {
      if (!adj[v][to] || used[to]) continue;
      used[to] = 1;
      if (match_r[to] < 0 || try_kuhn(match_r[to])) {
        match_r[to] = v;
        return true;
      }
    }
    return false;
  }

  bool perfect() {
    match_r.assign(nr, -1);
    int matched = 0;
    for (int v = 0; v < nl; ++v) {
      used.assign(nr, 0);
      if (try_kuhn(v)) ++matched;
    }
    return matched == nl;
  }
};

}  // namespace

double bottleneck_small(const PersistenceDiagram& d1, const PersistenceDiagram& d2) {
  std::vector<PersistencePair> p, q;
  for (const auto& x : d1.pairs)
    if (x.birth != x.death) p.push_back(x);
  for (const auto& x : d2.pairs)
    if (x.birth != x.death) q.push_back(x);
  if (p.size() > 12 || q.size() > 12)
    throw SizeLimitError("bottleneck_small: more than 12 off-diagonal points");
  int np = (int)p.size(), nq = (int)q.size();
  if (np == 0 && nq == 0) return 0.0;
  // left: p points then nq diagonal slots; right: q points then np slots
  int n = np + nq;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  std::vector<double> candidates = {0.0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double c;
      if (i < np && j < nq) c = point_cost(p[i], q[j]);
      else if (i < np) c = diagonal_cost(p[i]);
      else if (j < nq) c = diagonal_cost(q[j]);
      else c = 0.0;
      cost[i][j] = c;
      if (std::isfinite(c)) candidates.push_back(c);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  auto feasible = [&](double t) {
    Matcher m;
    m.nl = m.nr = n;
    m.adj.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.adj[i][j] = cost[i][j] <= t;
    return m.perfect();
  };
  int lo = 0, hi = (int)candidates.size() - 1;
  if (!feasible(candidates[hi])) return kInf;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (feasible(candidates[mid])) hi = mid;
    else lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace wellkit
