#include "wellkit/wellcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wellkit/error.hpp"
#include "wellkit/persistence.hpp"

namespace wellkit {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

int sign_of(double x) { return x > 0 ? 1 : -1; }  // caller guarantees x != 0

// Interval i covers radii strictly between events[i-1] and events[i]; pick a
// representative radius inside it.
double interval_radius(const std::vector<double>& events, int i) {
  double lo = i > 0 ? events[i - 1] : 0.0;
  if (i < (int)events.size()) return (lo + events[i]) / 2.0;
  return lo + 1.0;
}

std::vector<ComponentSnapshot> snapshot_at(const SampledMap& mesh,
                                           const std::vector<double>& w, const TargetPoint& a,
                                           const WellOptions& opts, double r) {
  int n = mesh.vertex_count();
  std::vector<char> in(n, 0);
  for (int v = 0; v < n; ++v) in[v] = w[v] <= r;
  Dsu dsu(n);
  for (const auto& e : mesh.edges)
    if (in[e[0]] && in[e[1]]) dsu.unite(e[0], e[1]);

  std::vector<int> comp_of(n, -1);
  std::vector<ComponentSnapshot> comps;
  for (int v = 0; v < n; ++v) {
    if (!in[v]) continue;
    int root = dsu.find(v);
    if (comp_of[root] < 0) {
      comp_of[root] = (int)comps.size();
      comps.push_back({});
      comps.back().radius = r;
    }
    comp_of[v] = comp_of[root];
    comps[comp_of[root]].members.push_back(v);
  }

  bool ext = opts.extension;
  for (ComponentSnapshot& c : comps) {
    for (int v : c.members)
      if (mesh.on_boundary[v]) c.touches_domain_boundary = true;

    if (mesh.domain_dim() == 1) {
      int lm = c.members.front(), rm = c.members.back();
      double aa = a.a[0];
      c.left_sign = lm > 0 ? sign_of(mesh.value(lm - 1, 0) - aa) : (ext ? -1 : 0);
      c.right_sign = rm < n - 1 ? sign_of(mesh.value(rm + 1, 0) - aa) : (ext ? 1 : 0);
      if (c.left_sign != 0 && c.right_sign != 0) {
        c.degree = (c.right_sign - c.left_sign) / 2;
      } else {
        for (int v : c.members) c.degree += mesh.zero_sign[v];
      }
    } else {
      for (int v : c.members) c.degree += mesh.zero_sign[v];
    }
    c.well = c.degree != 0 && (ext || !c.touches_domain_boundary);
  }

  if (mesh.domain_dim() == 2) {
    // Rim of each filled triangle region: directed edges whose reversal is
    // missing. Adjacent triangles share an edge in opposite directions.
    std::vector<std::set<std::pair<int, int>>> directed(comps.size());
    for (const auto& t : mesh.tris) {
      if (!in[t[0]] || !in[t[1]] || !in[t[2]]) continue;
      int c = comp_of[t[0]];
      directed[c].insert({t[0], t[1]});
      directed[c].insert({t[1], t[2]});
      directed[c].insert({t[2], t[0]});
    }
    for (size_t c = 0; c < comps.size(); ++c)
      for (const auto& e : directed[c])
        if (!directed[c].count({e.second, e.first})) comps[c].rim.push_back({e.first, e.second});
  }
  return comps;
}

int count_well(const std::vector<ComponentSnapshot>& comps) {
  int k = 0;
  for (const auto& c : comps) k += c.well;
  return k;
}

// Clamped extension of a 1-D map: outside [lo, hi] the graph continues with
// slope 1, so f - a crosses zero on the left ray exactly when f(lo) > a (at
// distance f(lo) - a) and on the right ray when f(hi) < a. Those crossings are
// genuine zeros of the extension; materialize them as vertices so sublevel
// components account for them at every radius. Their sublevel neighborhood
// reaches the domain exactly when the adjacent boundary vertex does, which is
// what the connecting edge encodes.
void attach_exterior_zeros(SampledMap& m, const TargetPoint& a) {
  const auto& dom = std::get<Interval1D>(m.domain);
  if (m.px.front() >= dom.lo && m.values.front() - a.a[0] > 0) {
    double d = m.values.front() - a.a[0];
    m.px.insert(m.px.begin(), m.px.front() - d);
    m.values.insert(m.values.begin(), a.a[0]);
    m.on_boundary.insert(m.on_boundary.begin(), 0);
    m.zero_sign.insert(m.zero_sign.begin(), 1);
    for (auto& e : m.edges) {
      ++e[0];
      ++e[1];
    }
    m.edges.insert(m.edges.begin(), {0, 1});
  }
  if (m.px.back() <= dom.hi && m.values.back() - a.a[0] < 0) {
    double d = a.a[0] - m.values.back();
    int n = m.vertex_count();
    m.px.push_back(m.px.back() + d);
    m.values.push_back(a.a[0]);
    m.on_boundary.push_back(0);
    m.zero_sign.push_back(1);
    m.edges.push_back({n - 1, n});
  }
}

}  // namespace

SampledMap prepare_map(const SampledMap& map, const TargetPoint& a, const WellOptions& opts) {
  if ((int)a.a.size() != map.codomain_dim)
    throw std::invalid_argument("target dimension does not match the codomain");
  SampledMap m = map;
  if (!non_generic_vertices(m, a).empty()) {
    if (!opts.jitter) throw NonGenericError("degenerate against the target; pass jitter to nudge");
    m = apply_jitter(m, a);
  }
  if (m.domain_dim() == 1) {
    if (m.codomain_dim != 1) throw std::invalid_argument("1-D domains need codomain_dim 1");
    m = refine_at_crossings(m, a);
    if (opts.extension) attach_exterior_zeros(m, a);
    return m;
  }
  if (m.codomain_dim != 2) throw std::invalid_argument("2-D domains need codomain_dim 2");
  return insert_zero_vertices(m, a);
}

WellFunction well_function(const SampledMap& map, const TargetPoint& a, const WellOptions& opts) {
  WellFunction w;
  w.mesh = prepare_map(map, a, opts);
  w.target = a;
  w.options = opts;
  w.vertex_values.resize(w.mesh.vertex_count());
  for (int v = 0; v < w.mesh.vertex_count(); ++v) w.vertex_values[v] = w.mesh.well_value(v, a);
  return w;
}

std::vector<ComponentSnapshot> components_at(const WellFunction& w, double r) {
  return snapshot_at(w.mesh, w.vertex_values, w.target, w.options, r);
}

int local_degree(const SampledMap& mesh, const TargetPoint& a, const ComponentSnapshot& c) {
  int sign_sum = 0;
  for (int v : c.members) sign_sum += mesh.zero_sign[v];
  if (mesh.domain_dim() == 1) {
    if (c.left_sign != 0 && c.right_sign != 0) return (c.right_sign - c.left_sign) / 2;
    return sign_sum;
  }
  if (c.rim.empty()) return sign_sum;
  double scale = 1.0;
  for (const auto& e : c.rim)
    for (int v : {e[0], e[1]})
      scale = std::max({scale, std::abs(mesh.value(v, 0)), std::abs(mesh.value(v, 1))});
  double tol = 1e-12 * scale;
  int wind = 0;
  for (const auto& e : c.rim) {
    double px = mesh.value(e[0], 0) - a.a[0], py = mesh.value(e[0], 1) - a.a[1];
    double qx = mesh.value(e[1], 0) - a.a[0], qy = mesh.value(e[1], 1) - a.a[1];
    if (std::abs(py) <= tol || std::abs(qy) <= tol) {
      if (std::abs(px) <= tol && std::abs(py) <= tol) return sign_sum;  // target on the rim
      if (std::abs(qx) <= tol && std::abs(qy) <= tol) return sign_sum;
    }
    bool below_p = py < 0, below_q = qy < 0;
    if (below_p == below_q) continue;
    double t = -py / (qy - py);
    double xc = px + t * (qx - px);
    if (std::abs(xc) <= tol) return sign_sum;  // ray grazed, winding ill-posed
    if (xc > 0) wind += below_p ? 1 : -1;
  }
  return wind;
}

WellGroupSnapshot well_group_at(const WellFunction& w, double r) {
  WellGroupSnapshot g;
  g.radius = r;
  g.components = components_at(w, r);
  g.well_basis = zero_space((int)g.components.size());
  for (size_t i = 0; i < g.components.size(); ++i)
    if (g.components[i].well)
      subspace_insert(g.well_basis, BitVector::unit((int)g.components.size(), (int)i));
  return g;
}

std::vector<double> vertex_events(const WellFunction& w) {
  std::vector<double> ev;
  for (double x : w.vertex_values)
    if (x > 0) ev.push_back(x);
  std::sort(ev.begin(), ev.end());
  ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
  return ev;
}

RankProfile rank_profile(const WellFunction& w) {
  RankProfile p;
  p.events = vertex_events(w);
  int m = (int)p.events.size() + 1;
  p.homology_ranks.resize(m);
  p.well_ranks.resize(m);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < m; ++i) {
    auto comps = components_at(w, interval_radius(p.events, i));
    p.homology_ranks[i] = (int)comps.size();
    p.well_ranks[i] = count_well(comps);
  }
  return p;
}

RankProfile rank_profile_serial(const WellFunction& w) {
  const SampledMap& mesh = w.mesh;
  int n = mesh.vertex_count();
  bool one_d = mesh.domain_dim() == 1;
  bool ext = w.options.extension;
  double aa = w.target.a[0];

  RankProfile p;
  p.events = vertex_events(w);

  std::vector<std::vector<int>> adj(n);
  for (const auto& e : mesh.edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int u, int v) { return w.vertex_values[u] < w.vertex_values[v]; });

  Dsu dsu(n);
  std::vector<char> in(n, 0);
  std::vector<int> sign_sum(n, 0), min_v(n, 0), max_v(n, 0);
  std::vector<char> touches(n, 0);
  int comp_count = 0;
  size_t next = 0;

  auto add_until = [&](double value) {
    while (next < order.size() && w.vertex_values[order[next]] <= value) {
      int v = order[next++];
      in[v] = 1;
      sign_sum[v] = mesh.zero_sign[v];
      touches[v] = mesh.on_boundary[v];
      min_v[v] = max_v[v] = v;
      ++comp_count;
      for (int u : adj[v]) {
        if (!in[u]) continue;
        int ru = dsu.find(u), rv = dsu.find(v);
        if (ru == rv) continue;
        dsu.parent[rv] = ru;
        sign_sum[ru] += sign_sum[rv];
        touches[ru] |= touches[rv];
        min_v[ru] = std::min(min_v[ru], min_v[rv]);
        max_v[ru] = std::max(max_v[ru], max_v[rv]);
        --comp_count;
      }
    }
  };

  auto record = [&]() {
    p.homology_ranks.push_back(comp_count);
    int well = 0;
    std::vector<char> seen(n, 0);
    for (int v = 0; v < n; ++v) {
      if (!in[v]) continue;
      int r = dsu.find(v);
      if (seen[r]) continue;
      seen[r] = 1;
      int degree;
      if (one_d) {
        int sl = min_v[r] > 0 ? sign_of(mesh.value(min_v[r] - 1, 0) - aa) : (ext ? -1 : 0);
        int sr = max_v[r] < n - 1 ? sign_of(mesh.value(max_v[r] + 1, 0) - aa) : (ext ? 1 : 0);
        degree = sl != 0 && sr != 0 ? (sr - sl) / 2 : sign_sum[r];
      } else {
        degree = sign_sum[r];
      }
      well += degree != 0 && (ext || !touches[r]);
    }
    p.well_ranks.push_back(well);
  };

  add_until(0.0);
  record();
  for (double e : p.events) {
    add_until(e);
    record();
  }
  return p;
}

std::vector<double> terminal_critical_values(const RankProfile& profile) {
  std::vector<double> out;
  for (size_t i = 1; i < profile.well_ranks.size(); ++i)
    if (profile.well_ranks[i] < profile.well_ranks[i - 1]) out.push_back(profile.events[i - 1]);
  return out;
}

std::vector<double> terminal_critical_values(const WellFunction& w) {
  return terminal_critical_values(rank_profile(w));
}

BitMatrix inclusion_matrix(const std::vector<ComponentSnapshot>& lo,
                           const std::vector<ComponentSnapshot>& hi, int vertex_count) {
  std::vector<int> owner(vertex_count, -1);
  for (size_t j = 0; j < hi.size(); ++j)
    for (int v : hi[j].members) owner[v] = (int)j;
  BitMatrix m((int)hi.size(), (int)lo.size());
  for (size_t c = 0; c < lo.size(); ++c) {
    int d = owner[lo[c].members.front()];
    if (d < 0) throw std::logic_error("sublevel component lost at a larger radius");
    m.set(d, (int)c, true);
  }
  return m;
}

WellModule build_well_module(const WellFunction& w) {
  WellModule mod;
  mod.extension = w.options.extension;
  RankProfile prof = rank_profile(w);
  mod.terminal_values = terminal_critical_values(prof);
  int l = (int)mod.terminal_values.size();

  if (l == 0) {
    mod.radii.push_back(prof.events.empty() ? 1.0 : prof.events[0] / 2.0);
  } else {
    mod.radii.push_back(mod.terminal_values[0] / 2.0);
    for (int i = 1; i < l; ++i)
      mod.radii.push_back((mod.terminal_values[i - 1] + mod.terminal_values[i]) / 2.0);
    mod.radii.push_back(mod.terminal_values[l - 1] + 1.0);
  }
  for (double r : mod.radii) mod.groups.push_back(well_group_at(w, r));

  int n = w.mesh.vertex_count();
  for (int i = 0; i < l; ++i) {
    const WellGroupSnapshot& cur = mod.groups[i];
    const WellGroupSnapshot& nxt = mod.groups[i + 1];
    BitMatrix m = inclusion_matrix(cur.components, nxt.components, n);
    Subspace k = intersect(cur.well_basis, kernel(m));
    std::vector<BitVector> q = quotient_basis(cur.well_basis, k);

    // Columns: quotient representatives first, then the vanishing basis; any
    // element of U_i has unique coordinates in this frame.
    BitMatrix frame(cur.homology_rank(), (int)q.size() + k.rank());
    for (size_t j = 0; j < q.size(); ++j)
      for (int r = 0; r < cur.homology_rank(); ++r) frame.set(r, (int)j, q[j].get(r));
    for (int j = 0; j < k.rank(); ++j)
      for (int r = 0; r < cur.homology_rank(); ++r)
        frame.set(r, (int)q.size() + j, k.basis[j].get(r));

    BitMatrix a((int)q.size(), cur.rank());
    for (int j = 0; j < cur.rank(); ++j) {
      auto x = solve(frame, cur.well_basis.basis[j]);
      if (!x) throw std::logic_error("well class outside its own quotient frame");
      for (size_t qi = 0; qi < q.size(); ++qi) a.set((int)qi, j, x->get((int)qi));
    }

    BitMatrix basis_cols(cur.homology_rank(), cur.rank());
    for (int j = 0; j < cur.rank(); ++j)
      for (int r = 0; r < cur.homology_rank(); ++r)
        basis_cols.set(r, j, cur.well_basis.basis[j].get(r));
    BitMatrix restricted = multiply(m, basis_cols);

    BitMatrix b((int)q.size(), nxt.rank());
    for (int j = 0; j < nxt.rank(); ++j) {
      auto x = solve(restricted, nxt.well_basis.basis[j]);
      if (!x) throw std::logic_error("well class with no well preimage");
      BitVector lift(cur.homology_rank());
      for (int c = 0; c < cur.rank(); ++c)
        if (x->get(c)) lift ^= cur.well_basis.basis[c];
      auto y = solve(frame, lift);
      if (!y) throw std::logic_error("lift escaped the quotient frame");
      for (size_t qi = 0; qi < q.size(); ++qi) b.set((int)qi, j, y->get((int)qi));
    }

    mod.maps.push_back(std::move(m));
    mod.vanishing.push_back(std::move(k));
    mod.forward.push_back(std::move(a));
    mod.backward.push_back(std::move(b));
    mod.multiplicities.push_back(mod.vanishing.back().rank() + (int)q.size() - nxt.rank());
  }
  mod.infinite_multiplicity = mod.groups.back().rank();

  // Attribute each terminal value: did any class dying there land in a
  // component killed by boundary contact? Judged on the event-grid interval
  // straddling the value, not at the next module radius, where later growth
  // could reach the boundary and mislabel an interior cancellation.
  for (int i = 0; i < l; ++i) {
    size_t j = std::lower_bound(prof.events.begin(), prof.events.end(), mod.terminal_values[i]) -
               prof.events.begin();
    auto before = components_at(w, interval_radius(prof.events, (int)j));
    auto after = components_at(w, interval_radius(prof.events, (int)j + 1));
    std::vector<int> owner(n, -1);
    for (size_t c = 0; c < after.size(); ++c)
      for (int v : after[c].members) owner[v] = (int)c;
    bool flag = false;
    for (const auto& c : before) {
      if (!c.well) continue;
      const ComponentSnapshot& o = after[owner[c.members.front()]];
      if (!o.well && o.touches_domain_boundary && !mod.extension) flag = true;
    }
    mod.boundary_deaths.push_back(flag);
  }
  return mod;
}

LeftFiltration left_filtration(const WellModule& mod) {
  LeftFiltration lf;
  int l = (int)mod.terminal_values.size();
  int n0 = mod.groups[0].homology_rank();

  std::vector<BitMatrix> composed(l + 1);
  composed[0] = BitMatrix::identity(n0);
  for (int i = 0; i < l; ++i) composed[i + 1] = multiply(mod.maps[i], composed[i]);

  lf.upper.resize(l + 1);
  lf.lower.resize(l + 1);
  lf.upper[0] = mod.groups[0].well_basis;
  for (int i = 1; i <= l; ++i)
    lf.upper[i] = intersect(lf.upper[i - 1], preimage(composed[i], mod.groups[i].well_basis));
  for (int i = 0; i < l; ++i)
    lf.lower[i] = intersect(lf.upper[i], preimage(composed[i], mod.vanishing[i]));
  lf.lower[l] = lf.upper[l];

  Subspace acc = zero_space(n0);
  auto extend = [&](const Subspace& target, double label) {
    for (const BitVector& v : quotient_basis(target, acc)) {
      subspace_insert(acc, v);
      lf.compatible_basis.push_back(v);
      lf.fall_ill.push_back(label);
    }
  };
  for (int i = 0; i < l; ++i) extend(lf.lower[i], mod.terminal_values[i]);
  extend(lf.lower[l], kInf);
  for (int i = l - 1; i >= 0; --i) extend(lf.upper[i], mod.terminal_values[i]);
  return lf;
}

WellDiagram well_diagram(const WellModule& mod) {
  WellDiagram d;
  d.rank_at_zero = mod.groups.empty() ? 0 : mod.groups[0].rank();
  int l = (int)mod.terminal_values.size();
  for (int i = 0; i < l; ++i)
    d.points.push_back(
        {mod.terminal_values[i], mod.multiplicities[i], (bool)mod.boundary_deaths[i]});
  if (mod.infinite_multiplicity > 0) d.points.push_back({kInf, mod.infinite_multiplicity, false});
  return d;
}

WellDiagram well_diagram(const SampledMap& map, const TargetPoint& a, const WellOptions& opts) {
  return well_diagram(build_well_module(well_function(map, a, opts)));
}

std::vector<ZeroPoint> robustness(const WellFunction& w) {
  std::vector<double> events = vertex_events(w);
  int m = (int)events.size() + 1;
  std::vector<int> zeros;
  for (int v = 0; v < w.mesh.vertex_count(); ++v)
    if (w.mesh.zero_sign[v] != 0) zeros.push_back(v);

  // wellness[i][z], plus the boundary attribution of the containing component
  std::vector<std::vector<char>> is_well(m, std::vector<char>(zeros.size(), 0));
  std::vector<std::vector<char>> at_boundary(m, std::vector<char>(zeros.size(), 0));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < m; ++i) {
    auto comps = components_at(w, interval_radius(events, i));
    std::vector<int> owner(w.mesh.vertex_count(), -1);
    for (size_t c = 0; c < comps.size(); ++c)
      for (int v : comps[c].members) owner[v] = (int)c;
    for (size_t z = 0; z < zeros.size(); ++z) {
      const ComponentSnapshot& c = comps[owner[zeros[z]]];
      is_well[i][z] = c.well;
      at_boundary[i][z] = c.touches_domain_boundary && !w.options.extension;
    }
  }

  std::vector<ZeroPoint> out;
  for (size_t z = 0; z < zeros.size(); ++z) {
    ZeroPoint p;
    p.vertex = zeros[z];
    p.x = w.mesh.px[p.vertex];
    p.y = w.mesh.domain_dim() == 2 ? w.mesh.py[p.vertex] : 0.0;
    p.robustness = kInf;
    for (int i = 0; i < m; ++i) {
      if (is_well[i][z]) continue;
      p.robustness = i == 0 ? 0.0 : events[i - 1];
      p.boundary_limited = at_boundary[i][z];
      break;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace wellkit
