#include "qcov/quiver.hpp"

#include <algorithm>

namespace qcov {

std::uint32_t Quiver::add_vertex(const std::string& name) {
  if (vertex_ids_.count(name)) throw Error("duplicate vertex name '" + name + "'");
  std::uint32_t id = static_cast<std::uint32_t>(vertices_.size());
  vertices_.push_back(name);
  vertex_ids_[name] = id;
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

std::uint32_t Quiver::add_arrow(const std::string& name, const std::string& source,
                                const std::string& target) {
  return add_arrow(name, vertex_id(source), vertex_id(target));
}

std::uint32_t Quiver::add_arrow(const std::string& name, std::uint32_t source,
                                std::uint32_t target) {
  if (arrow_ids_.count(name)) throw Error("duplicate arrow name '" + name + "'");
  if (source >= vertices_.size() || target >= vertices_.size())
    throw Error("arrow '" + name + "' references a missing vertex");
  std::uint32_t id = static_cast<std::uint32_t>(arrows_.size());
  arrows_.push_back(Arrow{name, source, target});
  arrow_ids_[name] = id;
  out_[source].push_back(id);
  in_[target].push_back(id);
  return id;
}

std::uint32_t Quiver::vertex_id(const std::string& name) const {
  auto it = vertex_ids_.find(name);
  if (it == vertex_ids_.end()) throw Error("unknown vertex '" + name + "'");
  return it->second;
}

std::uint32_t Quiver::arrow_id(const std::string& name) const {
  auto it = arrow_ids_.find(name);
  if (it == arrow_ids_.end()) throw Error("unknown arrow '" + name + "'");
  return it->second;
}

bool path_less(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.source != b.source) return a.source < b.source;
  return a.arrows < b.arrows;
}

void validate_path(const Quiver& q, const Path& p) {
  if (p.source >= q.vertex_count()) throw Error("path source vertex out of range");
  std::uint32_t at = p.source;
  for (std::uint32_t a : p.arrows) {
    if (a >= q.arrow_count()) throw Error("path arrow id out of range");
    if (q.arrow(a).source != at)
      throw Error("path is not composable at arrow '" + q.arrow(a).name + "'");
    at = q.arrow(a).target;
  }
}

std::string path_label(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e_" + q.vertex_name(p.source);
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += "*";
    s += q.arrow(p.arrows[i]).name;
  }
  return s;
}

PathCombo normalize_combo(const PrimeField& F, const Quiver& q, PathCombo combo) {
  for (auto& t : combo.terms) {
    validate_path(q, t.path);
    t.coeff = t.coeff % F.p();
  }
  if (combo.terms.size() > 1) {
    std::uint32_t s = combo.terms[0].path.source;
    std::uint32_t t = combo.terms[0].path.target(q);
    for (const auto& term : combo.terms)
      if (term.path.source != s || term.path.target(q) != t)
        throw Error("path combination mixes non-parallel paths");
  }
  std::sort(combo.terms.begin(), combo.terms.end(),
            [](const PathTerm& a, const PathTerm& b) { return path_less(a.path, b.path); });
  PathCombo out;
  for (auto& t : combo.terms) {
    if (!out.terms.empty() && out.terms.back().path == t.path)
      out.terms.back().coeff = F.add(out.terms.back().coeff, t.coeff);
    else
      out.terms.push_back(std::move(t));
  }
  out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(),
                                 [](const PathTerm& t) { return t.coeff == 0; }),
                  out.terms.end());
  return out;
}

std::string combo_label(const Quiver& q, const PathCombo& c) {
  if (c.terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c.terms.size(); ++i) {
    if (i) s += " + ";
    if (c.terms[i].coeff != 1) s += std::to_string(c.terms[i].coeff) + "*";
    s += path_label(q, c.terms[i].path);
  }
  return s;
}

}  // namespace qcov
