#include "qcov/category.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace qcov {

Vec Category::identity_coords(std::size_t a) const {
  Vec v(hom_dim(a, a), 0);
  v[identity_index(a)] = 1;
  return v;
}

bool Category::is_radical(std::size_t a, std::size_t b, const Vec& f) const {
  if (a != b) return true;
  return f[identity_index(a)] == 0;
}

std::size_t Category::total_hom_dim() const {
  std::size_t n = object_count(), total = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) total += hom_dim(a, b);
  return total;
}

namespace {

// All paths of length < window, bucketed per ordered vertex pair in
// length-then-lexicographic order.
struct PathTable {
  std::size_t n_vertices = 0;
  std::vector<std::vector<Path>> paths;  // [a * n + b]
  std::vector<std::map<std::vector<std::uint32_t>, std::size_t>> index;

  std::size_t at(std::size_t a, std::size_t b) const { return a * n_vertices + b; }
};

PathTable enumerate_paths(const Quiver& q, std::uint32_t window) {
  PathTable t;
  t.n_vertices = q.vertex_count();
  t.paths.resize(t.n_vertices * t.n_vertices);
  t.index.resize(t.n_vertices * t.n_vertices);

  // Extending lexicographically ordered prefixes by arrows in id order keeps
  // every per-pair bucket in length-then-lex order.
  std::vector<std::vector<Path>> frontier(t.n_vertices);
  for (std::uint32_t v = 0; v < t.n_vertices; ++v) {
    Path e{v, {}};
    frontier[v].push_back(e);
    t.index[t.at(v, v)][e.arrows] = t.paths[t.at(v, v)].size();
    t.paths[t.at(v, v)].push_back(e);
  }
  for (std::uint32_t len = 1; len < window; ++len) {
    std::vector<std::vector<Path>> next(t.n_vertices);
    for (std::uint32_t v = 0; v < t.n_vertices; ++v) {
      for (const Path& p : frontier[v]) {
        std::uint32_t end = p.target(q);
        for (std::uint32_t a : q.out_arrows(end)) {
          Path ext = p;
          ext.arrows.push_back(a);
          std::size_t pair = t.at(v, q.arrow(a).target);
          t.index[pair][ext.arrows] = t.paths[pair].size();
          t.paths[pair].push_back(ext);
          next[v].push_back(std::move(ext));
        }
      }
    }
    // Out-arrow lists are not sorted by arrow id in general; restore lex
    // order of the new frontier and of the buckets it produced.
    bool sorted = true;
    for (std::uint32_t v = 0; v < t.n_vertices && sorted; ++v)
      sorted = std::is_sorted(next[v].begin(), next[v].end(),
                              [](const Path& x, const Path& y) { return x.arrows < y.arrows; });
    if (!sorted) {
      for (auto& bucket : next)
        std::sort(bucket.begin(), bucket.end(),
                  [](const Path& x, const Path& y) { return x.arrows < y.arrows; });
    }
    frontier = std::move(next);
  }
  // Re-sort buckets into canonical order and rebuild indices (cheap, and
  // independent of generation order).
  for (std::size_t pair = 0; pair < t.paths.size(); ++pair) {
    std::sort(t.paths[pair].begin(), t.paths[pair].end(), path_less);
    t.index[pair].clear();
    for (std::size_t k = 0; k < t.paths[pair].size(); ++k)
      t.index[pair][t.paths[pair][k].arrows] = k;
  }
  return t;
}

// The two-sided ideal generated by the relations inside the length-< window
// truncation: closure of the relation vectors under multiplication by single
// arrows on either side, dropping any term of length >= window.
std::vector<RowSpace> close_ideal(const PrimeField& F, const Quiver& q,
                                  const std::vector<PathCombo>& relations, const PathTable& t,
                                  std::uint32_t window) {
  std::size_t n = t.n_vertices;
  std::vector<RowSpace> ideal;
  ideal.reserve(n * n);
  for (std::size_t pair = 0; pair < n * n; ++pair)
    ideal.emplace_back(F, t.paths[pair].size());

  struct Item {
    std::size_t source, target;
    Vec v;
  };
  std::deque<Item> work;

  auto push = [&](std::size_t s, std::size_t e, Vec v) {
    if (vec_is_zero(v)) return;
    if (ideal[t.at(s, e)].insert(v)) work.push_back(Item{s, e, std::move(v)});
  };

  for (const PathCombo& r : relations) {
    if (r.terms.empty()) continue;
    std::size_t s = r.terms[0].path.source;
    std::size_t e = r.terms[0].path.target(q);
    Vec v(t.paths[t.at(s, e)].size(), 0);
    for (const PathTerm& term : r.terms) {
      if (term.path.length() >= window) continue;
      v[t.index[t.at(s, e)].at(term.path.arrows)] = term.coeff;
    }
    push(s, e, std::move(v));
  }

  while (!work.empty()) {
    Item it = std::move(work.front());
    work.pop_front();
    const auto& paths = t.paths[t.at(it.source, it.target)];
    // Left multiplication: prefix with an arrow ending at the source.
    for (std::uint32_t a : q.in_arrows(static_cast<std::uint32_t>(it.source))) {
      std::size_t s2 = q.arrow(a).source;
      Vec w(t.paths[t.at(s2, it.target)].size(), 0);
      bool any = false;
      for (std::size_t k = 0; k < it.v.size(); ++k) {
        if (it.v[k] == 0 || paths[k].length() + 1 >= window) continue;
        std::vector<std::uint32_t> arrows;
        arrows.reserve(paths[k].length() + 1);
        arrows.push_back(a);
        arrows.insert(arrows.end(), paths[k].arrows.begin(), paths[k].arrows.end());
        std::size_t idx = t.index[t.at(s2, it.target)].at(arrows);
        w[idx] = F.add(w[idx], it.v[k]);
        any = true;
      }
      if (any) push(s2, it.target, std::move(w));
    }
    // Right multiplication: append an arrow starting at the target.
    for (std::uint32_t a : q.out_arrows(static_cast<std::uint32_t>(it.target))) {
      std::size_t e2 = q.arrow(a).target;
      Vec w(t.paths[t.at(it.source, e2)].size(), 0);
      bool any = false;
      for (std::size_t k = 0; k < it.v.size(); ++k) {
        if (it.v[k] == 0 || paths[k].length() + 1 >= window) continue;
        std::vector<std::uint32_t> arrows = paths[k].arrows;
        arrows.push_back(a);
        std::size_t idx = t.index[t.at(it.source, e2)].at(arrows);
        w[idx] = F.add(w[idx], it.v[k]);
        any = true;
      }
      if (any) push(it.source, e2, std::move(w));
    }
  }
  return ideal;
}

}  // namespace

BoundCategory BoundCategory::build(PrimeField field, Quiver quiver,
                                   std::vector<PathCombo> relations,
                                   std::uint32_t nilpotency_bound) {
  if (nilpotency_bound < 2) throw Error("nilpotency bound must be at least 2");
  std::vector<PathCombo> normalized;
  for (auto& r : relations) {
    PathCombo c = normalize_combo(field, quiver, std::move(r));
    for (const PathTerm& term : c.terms)
      if (term.path.length() < 2)
        throw Error("relation involves the path '" + path_label(quiver, term.path) +
                    "' of length < 2");
    if (!c.terms.empty()) normalized.push_back(std::move(c));
  }

  BoundCategory cat;
  cat.field_ = field;
  cat.quiver_ = std::move(quiver);
  cat.relations_ = std::move(normalized);
  cat.bound_ = nilpotency_bound;

  const Quiver& q = cat.quiver_;
  std::size_t n = q.vertex_count();
  PathTable table = enumerate_paths(q, cat.bound_);
  std::vector<RowSpace> ideal = close_ideal(field, q, cat.relations_, table, cat.bound_);

  cat.pairs_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      PairData& pd = cat.pairs_[a * n + b];
      std::size_t pair = table.at(a, b);
      pd.paths = std::move(table.paths[pair]);
      pd.path_index = std::move(table.index[pair]);
      const RowSpace& id_space = ideal[pair];
      pd.ideal_rows = id_space.rows();

      std::vector<bool> is_pivot(pd.paths.size(), false);
      for (std::size_t piv : id_space.pivots()) is_pivot[piv] = true;
      std::vector<std::size_t> pos_in_basis(pd.paths.size(), 0);
      for (std::size_t j = 0; j < pd.paths.size(); ++j) {
        if (!is_pivot[j]) {
          pos_in_basis[j] = pd.basis.size();
          pd.basis.push_back(j);
        }
      }
      pd.path_to_coords = Mat(pd.basis.size(), pd.paths.size());
      for (std::size_t k = 0; k < pd.basis.size(); ++k) pd.path_to_coords(k, pd.basis[k]) = 1;
      const auto& pivots = id_space.pivots();
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        // class(pivot path) = -sum over non-pivot columns of the RREF row
        for (std::size_t k = 0; k < pd.basis.size(); ++k)
          pd.path_to_coords(k, pivots[r]) = field.neg(id_space.rows()[r][pd.basis[k]]);
      }
    }
  }

  // Informational: does J^n already lie in the relation ideal? Computed in a
  // window one longer than the bound so length-n paths are visible.
  {
    PathTable wide = enumerate_paths(q, cat.bound_ + 1);
    std::vector<RowSpace> wide_ideal = close_ideal(field, q, cat.relations_, wide, cat.bound_ + 1);
    bool contained = true;
    for (std::size_t a = 0; a < n && contained; ++a) {
      for (std::size_t b = 0; b < n && contained; ++b) {
        std::size_t pair = wide.at(a, b);
        for (std::size_t k = 0; k < wide.paths[pair].size() && contained; ++k) {
          if (wide.paths[pair][k].length() != cat.bound_) continue;
          Vec unit(wide.paths[pair].size(), 0);
          unit[k] = 1;
          if (!wide_ideal[pair].contains(std::move(unit))) contained = false;
        }
      }
    }
    cat.report_.jn_contained_in_relation_ideal = contained;
  }
  return cat;
}

std::string BoundCategory::basis_label(std::size_t a, std::size_t b, std::size_t k) const {
  return path_label(quiver_, basis_path(a, b, k));
}

std::size_t BoundCategory::identity_index(std::size_t a) const {
  const PairData& pd = pair(a, a);
  for (std::size_t k = 0; k < pd.basis.size(); ++k)
    if (pd.paths[pd.basis[k]].length() == 0) return k;
  throw InternalError("identity path missing from hom basis");
}

Vec BoundCategory::reduce_path(const Path& p) const {
  validate_path(quiver_, p);
  std::size_t a = p.source, b = p.target(quiver_);
  const PairData& pd = pair(a, b);
  Vec coords(pd.basis.size(), 0);
  if (p.length() >= bound_) return coords;
  std::size_t j = pd.path_index.at(p.arrows);
  for (std::size_t k = 0; k < pd.basis.size(); ++k) coords[k] = pd.path_to_coords(k, j);
  return coords;
}

Vec BoundCategory::reduce_combo(const PathCombo& c) const {
  if (c.terms.empty()) throw Error("cannot reduce an empty path combination without endpoints");
  std::size_t a = c.terms[0].path.source, b = c.terms[0].path.target(quiver_);
  const PairData& pd = pair(a, b);
  Vec coords(pd.basis.size(), 0);
  for (const PathTerm& t : c.terms) {
    if (t.path.source != a || t.path.target(quiver_) != b)
      throw Error("path combination mixes non-parallel paths");
    vec_axpy(field_, coords, field_.reduce(static_cast<std::int64_t>(t.coeff)),
             reduce_path(t.path));
  }
  return coords;
}

Morphism BoundCategory::class_of_arrow(std::uint32_t arrow) const {
  const Arrow& a = quiver_.arrow(arrow);
  Path p{a.source, {arrow}};
  return Morphism{a.source, a.target, reduce_path(p)};
}

Vec BoundCategory::compose(std::size_t a, std::size_t b, std::size_t c, const Vec& g,
                           const Vec& f) const {
  const PairData& ab = pair(a, b);
  const PairData& bc = pair(b, c);
  const PairData& ac = pair(a, c);
  if (f.size() != ab.basis.size() || g.size() != bc.basis.size())
    throw Error("compose: coordinate length mismatch");
  Vec path_coords(ac.paths.size(), 0);
  for (std::size_t l = 0; l < f.size(); ++l) {
    if (f[l] == 0) continue;
    const Path& pf = ab.paths[ab.basis[l]];
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g[k] == 0) continue;
      const Path& pg = bc.paths[bc.basis[k]];
      if (pf.length() + pg.length() >= bound_) continue;
      std::vector<std::uint32_t> arrows = pf.arrows;
      arrows.insert(arrows.end(), pg.arrows.begin(), pg.arrows.end());
      std::size_t j = ac.path_index.at(arrows);
      path_coords[j] = field_.add(path_coords[j], field_.mul(f[l], g[k]));
    }
  }
  return mat_vec(field_, ac.path_to_coords, path_coords);
}

std::vector<Category::Generator> BoundCategory::generators() const {
  std::vector<Generator> gens;
  for (std::uint32_t a = 0; a < quiver_.arrow_count(); ++a) {
    Morphism m = class_of_arrow(a);
    gens.push_back(Generator{m.source, m.target, std::move(m.coords), quiver_.arrow(a).name});
  }
  return gens;
}

TabulatedCategory::TabulatedCategory(PrimeField field, std::vector<std::string> object_names)
    : field_(field), names_(std::move(object_names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (name_ids_.count(names_[i])) throw Error("duplicate object name '" + names_[i] + "'");
    name_ids_[names_[i]] = i;
  }
  labels_.resize(names_.size() * names_.size());
  identity_.resize(names_.size());
}

void TabulatedCategory::set_hom(std::size_t a, std::size_t b, std::vector<std::string> labels) {
  labels_[idx(a, b)] = std::move(labels);
}

void TabulatedCategory::set_identity_index(std::size_t a, std::size_t k) {
  if (k >= hom_dim(a, a)) throw Error("identity index out of range");
  identity_[a] = k;
}

void TabulatedCategory::set_composition(std::size_t a, std::size_t b, std::size_t c, std::size_t g,
                                        std::size_t f, Vec coords) {
  if (coords.size() != hom_dim(a, c)) throw Error("composition tensor: coordinate size mismatch");
  auto& mats = comp_[idx(a, b) * names_.size() + c];
  if (mats.empty()) mats.assign(hom_dim(b, c), Mat(hom_dim(a, c), hom_dim(a, b)));
  for (std::size_t i = 0; i < coords.size(); ++i) mats[g](i, f) = coords[i];
}

std::size_t TabulatedCategory::object_id(const std::string& name) const {
  auto it = name_ids_.find(name);
  if (it == name_ids_.end()) throw Error("unknown object '" + name + "'");
  return it->second;
}

std::size_t TabulatedCategory::identity_index(std::size_t a) const {
  if (!identity_[a]) throw InternalError("identity index not set for object " + names_[a]);
  return *identity_[a];
}

Vec TabulatedCategory::compose(std::size_t a, std::size_t b, std::size_t c, const Vec& g,
                               const Vec& f) const {
  if (f.size() != hom_dim(a, b) || g.size() != hom_dim(b, c))
    throw Error("compose: coordinate length mismatch");
  Vec out(hom_dim(a, c), 0);
  if (g.empty() || f.empty()) return out;
  auto it = comp_.find(idx(a, b) * names_.size() + c);
  if (it == comp_.end()) throw InternalError("composition tensor missing");
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g[k] == 0) continue;
    Vec part = mat_vec(field_, it->second[k], f);
    vec_axpy(field_, out, g[k], part);
  }
  return out;
}

std::vector<Category::Generator> TabulatedCategory::generators() const {
  std::vector<Generator> gens;
  for (std::size_t a = 0; a < names_.size(); ++a) {
    for (std::size_t b = 0; b < names_.size(); ++b) {
      for (std::size_t k = 0; k < hom_dim(a, b); ++k) {
        if (a == b && k == identity_index(a)) continue;
        Vec coords(hom_dim(a, b), 0);
        coords[k] = 1;
        gens.push_back(Generator{a, b, std::move(coords), basis_label(a, b, k)});
      }
    }
  }
  return gens;
}

void TabulatedCategory::validate() const {
  std::size_t n = names_.size();
  for (std::size_t a = 0; a < n; ++a) {
    Vec ida = identity_coords(a);
    for (std::size_t b = 0; b < n; ++b) {
      Vec idb = identity_coords(b);
      for (std::size_t k = 0; k < hom_dim(a, b); ++k) {
        Vec f(hom_dim(a, b), 0);
        f[k] = 1;
        if (compose(a, a, b, f, ida) != f || compose(a, b, b, idb, f) != f)
          throw InternalError("tabulated category violates an identity law at (" + names_[a] +
                              "," + names_[b] + ")");
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          for (std::size_t kf = 0; kf < hom_dim(a, b); ++kf)
            for (std::size_t kg = 0; kg < hom_dim(b, c); ++kg)
              for (std::size_t kh = 0; kh < hom_dim(c, d); ++kh) {
                Vec f(hom_dim(a, b), 0), g(hom_dim(b, c), 0), h(hom_dim(c, d), 0);
                f[kf] = 1;
                g[kg] = 1;
                h[kh] = 1;
                Vec left = compose(a, c, d, h, compose(a, b, c, g, f));
                Vec right = compose(a, b, d, compose(b, c, d, h, g), f);
                if (left != right)
                  throw InternalError("tabulated category composition is not associative");
              }
  LocallyBoundedReport rep = validate_locally_bounded(*this);
  if (!rep.ok) throw InternalError("tabulated category is not locally bounded: " + rep.witness);
}

bool is_connected(const Category& cat) {
  std::size_t n = cat.object_count();
  if (n == 0) return true;
  std::vector<std::size_t> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && cat.hom_dim(a, b) > 0) comp[find(a)] = find(b);
  std::size_t root = find(0);
  for (std::size_t i = 1; i < n; ++i)
    if (find(i) != root) return false;
  return true;
}

bool is_schurian(const Category& cat) {
  std::size_t n = cat.object_count();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (cat.hom_dim(a, b) > 1) return false;
  return true;
}

LocallyBoundedReport validate_locally_bounded(const Category& cat) {
  LocallyBoundedReport rep;
  rep.ok = true;
  const PrimeField& F = cat.field();
  for (std::size_t a = 0; a < cat.object_count(); ++a) {
    LocalRingInfo info;
    std::size_t d = cat.hom_dim(a, a);
    info.end_dim = d;
    std::size_t id = cat.identity_index(a);

    // Radical candidate: the span of the non-identity basis vectors. Check it
    // is closed under multiplication and nilpotent.
    std::vector<Vec> rad;
    for (std::size_t k = 0; k < d; ++k) {
      if (k == id) continue;
      Vec v(d, 0);
      v[k] = 1;
      rad.push_back(std::move(v));
    }
    bool closed = true;
    for (const Vec& x : rad)
      for (const Vec& y : rad) {
        Vec prod = cat.compose(a, a, a, x, y);
        if (prod[id] != 0) closed = false;
      }
    bool nilpotent = true;
    std::size_t index = rad.empty() ? 1 : 0;
    if (!rad.empty()) {
      std::vector<Vec> power = rad;
      for (std::size_t step = 1; step <= d + 1; ++step) {
        bool zero = std::all_of(power.begin(), power.end(),
                                [](const Vec& v) { return vec_is_zero(v); });
        RowSpace span(F, d);
        for (const Vec& v : power) span.insert(v);
        if (zero || span.dim() == 0) {
          index = step;
          break;
        }
        if (step == d + 1) {
          nilpotent = false;
          break;
        }
        std::vector<Vec> next;
        for (const Vec& x : rad)
          for (const Vec& y : span.rows()) next.push_back(cat.compose(a, a, a, x, y));
        RowSpace next_span(F, d);
        for (const Vec& v : next) next_span.insert(v);
        power.assign(next_span.rows().begin(), next_span.rows().end());
      }
    }
    info.nilpotency_index = index;
    info.local = closed && nilpotent;
    if (!info.local) {
      rep.ok = false;
      if (rep.witness.empty())
        rep.witness = "End(" + cat.object_name(a) + ") is not visibly local";
    }
    rep.per_object.push_back(info);
  }
  return rep;
}

}  // namespace qcov
