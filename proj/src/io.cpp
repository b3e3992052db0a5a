#include "qcov/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qcov {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

const json& field(const json& j, const char* key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(context + ": missing field '" + key + "'");
  return *it;
}

std::string resolve(const std::string& referencing_file, const std::string& ref) {
  std::filesystem::path p(ref);
  if (p.is_absolute()) return p.string();
  return (std::filesystem::path(referencing_file).parent_path() / p).string();
}

PathCombo parse_combo(const json& arr, const Quiver& q, const PrimeField& F,
                      const std::string& context) {
  if (!arr.is_array()) throw Error(context + ": expected an array of {coeff, path} terms");
  PathCombo combo;
  for (const json& term : arr) {
    std::int64_t c = field(term, "coeff", context).get<std::int64_t>();
    Path p;
    const json& steps = field(term, "path", context);
    if (!steps.is_array() || steps.empty())
      throw Error(context + ": each term needs a nonempty arrow path");
    std::vector<std::string> names = steps.get<std::vector<std::string>>();
    for (const std::string& n : names) {
      if (!q.has_arrow(n)) throw Error(context + ": unknown arrow '" + n + "'");
      p.arrows.push_back(q.arrow_id(n));
    }
    p.source = q.arrow(p.arrows.front()).source;
    validate_path(q, p);
    combo.terms.push_back(PathTerm{F.reduce(c), p});
  }
  return combo;
}

ojson combo_to_json(const Quiver& q, const BoundCategory& cat, std::size_t a, std::size_t b,
                    const Vec& coords) {
  ojson arr = ojson::array();
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] == 0) continue;
    ojson term;
    term["coeff"] = coords[k];
    ojson path = ojson::array();
    for (std::uint32_t arrow : cat.basis_path(a, b, k).arrows) path.push_back(q.arrow(arrow).name);
    term["path"] = std::move(path);
    arr.push_back(std::move(term));
  }
  return arr;
}

}  // namespace

Workspace::Workspace(std::optional<fp_t> prime_override) : override_(prime_override) {
  if (override_ && !is_prime(*override_))
    throw Error("prime override " + std::to_string(*override_) + " is not prime");
}

std::string Workspace::canonical(const std::string& path) const {
  std::error_code ec;
  std::filesystem::path c = std::filesystem::weakly_canonical(path, ec);
  return ec ? path : c.string();
}

const PrimeField& Workspace::field_for(fp_t file_prime, const std::string& path) {
  fp_t effective = override_.value_or(file_prime);
  if (!field_) {
    field_.emplace(effective);
  } else if (field_->p() != effective) {
    throw Error(path + ": field_prime " + std::to_string(effective) +
                " conflicts with the workspace prime " + std::to_string(field_->p()));
  }
  return *field_;
}

std::optional<fp_t> Workspace::prime() const {
  if (field_) return field_->p();
  return override_;
}

const BoundCategory& Workspace::category(const std::string& raw_path) {
  std::string path = canonical(raw_path);
  auto it = categories_.find(path);
  if (it != categories_.end()) return *it->second;

  json j = load_json(path);
  fp_t file_prime = static_cast<fp_t>(field(j, "field_prime", path).get<std::uint64_t>());
  if (!is_prime(file_prime)) throw Error(path + ": field_prime is not prime");
  const PrimeField& F = field_for(file_prime, path);

  Quiver q;
  for (const json& v : field(j, "vertices", path)) q.add_vertex(v.get<std::string>());
  for (const json& a : field(j, "arrows", path))
    q.add_arrow(field(a, "name", path).get<std::string>(),
                field(a, "source", path).get<std::string>(),
                field(a, "target", path).get<std::string>());
  std::vector<PathCombo> relations;
  if (j.contains("relations"))
    for (const json& r : j["relations"]) relations.push_back(parse_combo(r, q, F, path));
  std::uint32_t bound = field(j, "nilpotency_bound", path).get<std::uint32_t>();

  auto cat = std::make_unique<BoundCategory>(
      BoundCategory::build(F, std::move(q), std::move(relations), bound));
  return *(categories_[path] = std::move(cat));
}

const LinearFunctor& Workspace::functor(const std::string& raw_path) {
  std::string path = canonical(raw_path);
  auto it = functors_.find(path);
  if (it != functors_.end()) return *it->second;

  json j = load_json(path);
  std::string src_path = resolve(path, field(j, "source", path).get<std::string>());
  std::string tgt_path = resolve(path, field(j, "target", path).get<std::string>());
  const BoundCategory& src = category(src_path);
  const BoundCategory& tgt = category(tgt_path);

  std::vector<std::size_t> object_map(src.object_count());
  const json& omap = field(j, "object_map", path);
  for (std::size_t v = 0; v < src.object_count(); ++v) {
    const std::string& name = src.object_name(v);
    if (!omap.contains(name)) throw Error(path + ": object_map is missing vertex '" + name + "'");
    object_map[v] = tgt.object_id(omap[name].get<std::string>());
  }
  const json& imgs = field(j, "arrow_images", path);
  std::vector<Vec> images(src.quiver().arrow_count());
  for (std::uint32_t a = 0; a < src.quiver().arrow_count(); ++a) {
    const std::string& name = src.quiver().arrow(a).name;
    if (!imgs.contains(name)) throw Error(path + ": arrow_images is missing arrow '" + name + "'");
    PathCombo combo = parse_combo(imgs[name], tgt.quiver(), tgt.field(), path + ":" + name);
    std::size_t fs = object_map[src.quiver().arrow(a).source];
    std::size_t ft = object_map[src.quiver().arrow(a).target];
    Vec coords(tgt.hom_dim(fs, ft), 0);
    for (const PathTerm& t : combo.terms) {
      if (t.path.source != fs || t.path.target(tgt.quiver()) != ft)
        throw Error(path + ": image of '" + name + "' has endpoints inconsistent with object_map");
      if (t.path.length() < 1)
        throw Error(path + ": image of '" + name + "' must be supported on paths of length >= 1");
      vec_axpy(tgt.field(), coords, t.coeff, tgt.reduce_path(t.path));
    }
    images[a] = std::move(coords);
  }
  auto f = std::make_unique<LinearFunctor>(src, tgt, std::move(object_map), std::move(images));
  functor_refs_[path] = FunctorRefs{src_path, tgt_path};
  return *(functors_[path] = std::move(f));
}

const Workspace::FunctorRefs& Workspace::functor_refs(const std::string& raw_path) const {
  auto it = functor_refs_.find(canonical(raw_path));
  if (it == functor_refs_.end()) throw Error("functor file not loaded: " + raw_path);
  return it->second;
}

const Representation& Workspace::representation(const std::string& raw_path) {
  std::string path = canonical(raw_path);
  auto it = representations_.find(path);
  if (it != representations_.end()) return *it->second;

  json j = load_json(path);
  const BoundCategory& cat = category(resolve(path, field(j, "category", path).get<std::string>()));
  const Quiver& q = cat.quiver();
  const PrimeField& F = cat.field();

  std::vector<std::size_t> dims(cat.object_count(), 0);
  const json& dmap = field(j, "dims", path);
  for (auto& [name, value] : dmap.items()) {
    if (!q.has_vertex(name)) throw Error(path + ": dims references unknown vertex '" + name + "'");
    dims[q.vertex_id(name)] = value.get<std::size_t>();
  }
  std::vector<Mat> mats(q.arrow_count());
  for (std::uint32_t a = 0; a < q.arrow_count(); ++a)
    mats[a] = Mat(dims[q.arrow(a).target], dims[q.arrow(a).source]);
  if (j.contains("matrices")) {
    for (auto& [name, rows] : j["matrices"].items()) {
      if (!q.has_arrow(name)) throw Error(path + ": matrices references unknown arrow '" + name + "'");
      std::uint32_t a = q.arrow_id(name);
      Mat& m = mats[a];
      if (!rows.is_array() || rows.size() != m.rows())
        throw Error(path + ": matrix for '" + name + "' has the wrong number of rows");
      for (std::size_t i = 0; i < m.rows(); ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != m.cols())
          throw Error(path + ": matrix for '" + name + "' has the wrong number of columns");
        for (std::size_t jcol = 0; jcol < m.cols(); ++jcol)
          m(i, jcol) = F.reduce(row[jcol].get<std::int64_t>());
      }
    }
  }
  auto rep = std::make_unique<Representation>(
      Representation::from_arrow_matrices(cat, std::move(dims), std::move(mats)));
  return *(representations_[path] = std::move(rep));
}

const FiniteGroup& Workspace::group(const std::string& raw_path) {
  std::string path = canonical(raw_path);
  auto it = groups_.find(path);
  if (it != groups_.end()) return *it->second;

  json j = load_json(path);
  std::vector<std::string> elements = field(j, "elements", path).get<std::vector<std::string>>();
  std::map<std::string, std::size_t> ids;
  for (std::size_t e = 0; e < elements.size(); ++e) ids[elements[e]] = e;
  const json& tj = field(j, "table", path);
  std::vector<std::vector<std::size_t>> table;
  for (const json& row : tj) {
    std::vector<std::size_t> r;
    for (const json& cell : row) {
      auto idit = ids.find(cell.get<std::string>());
      if (idit == ids.end()) throw Error(path + ": table entry is not a group element");
      r.push_back(idit->second);
    }
    table.push_back(std::move(r));
  }
  auto g = std::make_unique<FiniteGroup>(std::move(elements), std::move(table));
  return *(groups_[path] = std::move(g));
}

const GroupAction& Workspace::action(const std::string& raw_path) {
  std::string path = canonical(raw_path);
  auto it = actions_.find(path);
  if (it != actions_.end()) return *it->second;

  json j = load_json(path);
  const FiniteGroup& g = group(path);
  if (!j.contains("action")) throw Error(path + ": group file has no 'action'");
  if (!j.contains("category"))
    throw Error(path + ": group files with an action must name their 'category'");
  const BoundCategory& cat = category(resolve(path, j["category"].get<std::string>()));

  auto act = std::make_unique<GroupAction>();
  act->group = &g;
  act->cat = &cat;
  const json& aj = j["action"];
  for (std::size_t e = 0; e < g.order(); ++e) {
    const std::string& name = g.name(e);
    if (!aj.contains(name)) {
      if (e == g.identity()) {
        act->functors.push_back(identity_functor(cat));
        continue;
      }
      throw Error(path + ": action is missing element '" + name + "'");
    }
    const json& entry = aj[name];
    if (entry.is_string()) {
      const LinearFunctor& f = functor(resolve(path, entry.get<std::string>()));
      if (&f.source() != &cat || &f.target() != &cat)
        throw Error(path + ": action functor for '" + name + "' is not an endofunctor of the category");
      act->functors.push_back(f);
    } else {
      std::vector<std::size_t> object_map(cat.object_count());
      const json& omap = field(entry, "object_map", path);
      for (std::size_t v = 0; v < cat.object_count(); ++v)
        object_map[v] = cat.object_id(omap[cat.object_name(v)].get<std::string>());
      const json& imgs = field(entry, "arrow_images", path);
      std::vector<Vec> images(cat.quiver().arrow_count());
      for (std::uint32_t a = 0; a < cat.quiver().arrow_count(); ++a) {
        const std::string& an = cat.quiver().arrow(a).name;
        if (!imgs.contains(an)) throw Error(path + ": action of '" + name + "' misses arrow '" + an + "'");
        PathCombo combo = parse_combo(imgs[an], cat.quiver(), cat.field(), path);
        Vec coords(cat.hom_dim(object_map[cat.quiver().arrow(a).source],
                               object_map[cat.quiver().arrow(a).target]),
                   0);
        for (const PathTerm& t : combo.terms)
          vec_axpy(cat.field(), coords, t.coeff, cat.reduce_path(t.path));
        images[a] = std::move(coords);
      }
      act->functors.emplace_back(cat, cat, std::move(object_map), std::move(images));
    }
  }
  return *(actions_[path] = std::move(act));
}

const Grading& Workspace::grading(const std::string& raw_path) {
  std::string path = canonical(raw_path);
  auto it = gradings_.find(path);
  if (it != gradings_.end()) return *it->second;

  json j = load_json(path);
  const BoundCategory& cat = category(resolve(path, field(j, "category", path).get<std::string>()));
  const FiniteGroup& g = group(resolve(path, field(j, "group", path).get<std::string>()));
  auto grading = std::make_unique<Grading>();
  grading->cat = &cat;
  grading->group = &g;
  grading->degree.assign(cat.quiver().arrow_count(), g.identity());
  const json& degs = field(j, "degrees", path);
  for (auto& [arrow, elem] : degs.items()) {
    if (!cat.quiver().has_arrow(arrow))
      throw Error(path + ": degrees references unknown arrow '" + arrow + "'");
    grading->degree[cat.quiver().arrow_id(arrow)] = g.element_id(elem.get<std::string>());
  }
  return *(gradings_[path] = std::move(grading));
}

const Workspace::QuiverMapFile& Workspace::quiver_map(const std::string& raw_path) {
  std::string path = canonical(raw_path);
  auto it = quiver_maps_.find(path);
  if (it != quiver_maps_.end()) return *it->second;

  json j = load_json(path);
  const BoundCategory& src = category(resolve(path, field(j, "source", path).get<std::string>()));
  const BoundCategory& tgt = category(resolve(path, field(j, "target", path).get<std::string>()));
  const json& vmap = field(j, "vertex_map", path);
  const json& amap = field(j, "arrow_map", path);
  std::vector<std::size_t> vm(src.quiver().vertex_count()), am(src.quiver().arrow_count());
  for (std::uint32_t v = 0; v < src.quiver().vertex_count(); ++v) {
    const std::string& name = src.quiver().vertex_name(v);
    if (!vmap.contains(name)) throw Error(path + ": vertex_map is missing '" + name + "'");
    vm[v] = tgt.quiver().vertex_id(vmap[name].get<std::string>());
  }
  for (std::uint32_t a = 0; a < src.quiver().arrow_count(); ++a) {
    const std::string& name = src.quiver().arrow(a).name;
    if (!amap.contains(name)) throw Error(path + ": arrow_map is missing '" + name + "'");
    am[a] = tgt.quiver().arrow_id(amap[name].get<std::string>());
  }
  auto qm = std::make_unique<QuiverMapFile>();
  qm->source = &src;
  qm->target = &tgt;
  qm->map = make_quiver_map(src.quiver(), tgt.quiver(), std::move(vm), std::move(am));
  return *(quiver_maps_[path] = std::move(qm));
}

std::string category_to_json(const BoundCategory& cat) {
  const Quiver& q = cat.quiver();
  ojson j;
  j["field_prime"] = cat.field().p();
  ojson vertices = ojson::array();
  for (std::uint32_t v = 0; v < q.vertex_count(); ++v) vertices.push_back(q.vertex_name(v));
  j["vertices"] = std::move(vertices);
  ojson arrows = ojson::array();
  for (std::uint32_t a = 0; a < q.arrow_count(); ++a) {
    ojson arrow;
    arrow["name"] = q.arrow(a).name;
    arrow["source"] = q.vertex_name(q.arrow(a).source);
    arrow["target"] = q.vertex_name(q.arrow(a).target);
    arrows.push_back(std::move(arrow));
  }
  j["arrows"] = std::move(arrows);
  ojson relations = ojson::array();
  for (const PathCombo& r : cat.relations()) {
    ojson combo = ojson::array();
    for (const PathTerm& t : r.terms) {
      ojson term;
      term["coeff"] = t.coeff;
      ojson path = ojson::array();
      for (std::uint32_t a : t.path.arrows) path.push_back(q.arrow(a).name);
      term["path"] = std::move(path);
      combo.push_back(std::move(term));
    }
    relations.push_back(std::move(combo));
  }
  j["relations"] = std::move(relations);
  j["nilpotency_bound"] = cat.bound();
  return j.dump(2);
}

std::string representation_to_json(const Representation& rep, const std::string& category_ref) {
  const auto* cat = dynamic_cast<const BoundCategory*>(&rep.category());
  if (!cat) throw Error("representation_to_json: category is not presented");
  const Quiver& q = cat->quiver();
  ojson j;
  j["category"] = category_ref;
  ojson dims;
  for (std::uint32_t v = 0; v < q.vertex_count(); ++v) dims[q.vertex_name(v)] = rep.dim(v);
  j["dims"] = std::move(dims);
  ojson mats;
  for (std::uint32_t a = 0; a < q.arrow_count(); ++a) {
    Mat m = rep.arrow_matrix(a);
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      ojson row = ojson::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
      rows.push_back(std::move(row));
    }
    mats[q.arrow(a).name] = std::move(rows);
  }
  j["matrices"] = std::move(mats);
  return j.dump(2);
}

std::string grading_to_json(const Grading& grading, const std::string& category_ref,
                            const std::string& group_ref) {
  ojson j;
  j["category"] = category_ref;
  j["group"] = group_ref;
  ojson degs;
  const Quiver& q = grading.cat->quiver();
  for (std::uint32_t a = 0; a < q.arrow_count(); ++a)
    degs[q.arrow(a).name] = grading.group->name(grading.degree[a]);
  j["degrees"] = std::move(degs);
  return j.dump(2);
}

std::string functor_to_json(const LinearFunctor& f, const std::string& source_ref,
                            const std::string& target_ref) {
  const auto* tgt = dynamic_cast<const BoundCategory*>(&f.target());
  if (!tgt) throw Error("functor_to_json: target category is not presented");
  const Quiver& qs = f.source().quiver();
  ojson j;
  j["source"] = source_ref;
  j["target"] = target_ref;
  ojson omap;
  for (std::size_t v = 0; v < f.source().object_count(); ++v)
    omap[f.source().object_name(v)] = tgt->object_name(f.object_image(v));
  j["object_map"] = std::move(omap);
  ojson imgs;
  for (std::uint32_t a = 0; a < qs.arrow_count(); ++a) {
    std::size_t fs = f.object_image(qs.arrow(a).source);
    std::size_t ft = f.object_image(qs.arrow(a).target);
    imgs[qs.arrow(a).name] = combo_to_json(tgt->quiver(), *tgt, fs, ft, f.arrow_image(a));
  }
  j["arrow_images"] = std::move(imgs);
  return j.dump(2);
}

Morphism parse_morphism(const BoundCategory& cat, const std::string& json_text) {
  json arr;
  try {
    arr = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("morphism: ") + e.what());
  }
  PathCombo combo = parse_combo(arr, cat.quiver(), cat.field(), "morphism");
  if (combo.terms.empty()) throw Error("morphism: empty combination has no endpoints");
  combo = normalize_combo(cat.field(), cat.quiver(), std::move(combo));
  Morphism m;
  m.source = combo.terms[0].path.source;
  m.target = combo.terms[0].path.target(cat.quiver());
  m.coords = cat.reduce_combo(combo);
  return m;
}

}  // namespace qcov
