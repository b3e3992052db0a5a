#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcov/field.hpp"

namespace qcov {

struct Arrow {
  std::string name;
  std::uint32_t source;
  std::uint32_t target;
};

// A finite quiver: named vertices and named arrows with endpoints.
class Quiver {
public:
  std::uint32_t add_vertex(const std::string& name);
  std::uint32_t add_arrow(const std::string& name, const std::string& source,
                          const std::string& target);
  std::uint32_t add_arrow(const std::string& name, std::uint32_t source, std::uint32_t target);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  const std::string& vertex_name(std::uint32_t v) const { return vertices_[v]; }
  const Arrow& arrow(std::uint32_t a) const { return arrows_[a]; }

  std::uint32_t vertex_id(const std::string& name) const;
  std::uint32_t arrow_id(const std::string& name) const;
  bool has_vertex(const std::string& name) const { return vertex_ids_.count(name) > 0; }
  bool has_arrow(const std::string& name) const { return arrow_ids_.count(name) > 0; }

  const std::vector<std::uint32_t>& out_arrows(std::uint32_t v) const { return out_[v]; }
  const std::vector<std::uint32_t>& in_arrows(std::uint32_t v) const { return in_[v]; }

private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::uint32_t> vertex_ids_;
  std::map<std::string, std::uint32_t> arrow_ids_;
  std::vector<std::vector<std::uint32_t>> out_, in_;
};

// A path in a quiver: a source vertex plus arrows in traversal order. The
// empty arrow list is the trivial path e_source.
struct Path {
  std::uint32_t source = 0;
  std::vector<std::uint32_t> arrows;

  std::size_t length() const { return arrows.size(); }
  std::uint32_t target(const Quiver& q) const {
    return arrows.empty() ? source : q.arrow(arrows.back()).target;
  }

  bool operator==(const Path& o) const { return source == o.source && arrows == o.arrows; }
};

// Length-then-lexicographic-by-arrow-id order; paths from different sources
// compare by source id first so the order is total.
bool path_less(const Path& a, const Path& b);

// Checks consecutive arrows are composable and the first starts at `source`.
void validate_path(const Quiver& q, const Path& p);

std::string path_label(const Quiver& q, const Path& p);

struct PathTerm {
  fp_t coeff = 0;
  Path path;
};

// A linear combination of parallel paths.
struct PathCombo {
  std::vector<PathTerm> terms;
};

// Sorts terms, merges duplicate paths, drops zero coefficients. Throws if
// the paths are not parallel or not composable.
PathCombo normalize_combo(const PrimeField& F, const Quiver& q, PathCombo combo);

std::string combo_label(const Quiver& q, const PathCombo& c);

}  // namespace qcov
