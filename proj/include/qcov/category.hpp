#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcov/matrix.hpp"
#include "qcov/quiver.hpp"

namespace qcov {

// A finite k-linear category with chosen hom bases. Morphisms are coordinate
// vectors in the hom basis of their (source, target) pair. Both presentations
// (bound quiver categories) and tabulated categories produced by
// constructions implement this interface; the functor machinery only sees it.
class Category {
public:
  virtual ~Category() = default;

  virtual const PrimeField& field() const = 0;
  virtual std::size_t object_count() const = 0;
  virtual const std::string& object_name(std::size_t a) const = 0;
  virtual std::size_t object_id(const std::string& name) const = 0;

  virtual std::size_t hom_dim(std::size_t a, std::size_t b) const = 0;
  virtual std::string basis_label(std::size_t a, std::size_t b, std::size_t k) const = 0;

  // Index of the identity inside the basis of Hom(a,a). In both
  // implementations the identity is itself a basis vector and every other
  // diagonal basis vector is nilpotent.
  virtual std::size_t identity_index(std::size_t a) const = 0;
  Vec identity_coords(std::size_t a) const;

  // g in Hom(b,c) composed after f in Hom(a,b); the right factor acts first.
  virtual Vec compose(std::size_t a, std::size_t b, std::size_t c, const Vec& g,
                      const Vec& f) const = 0;

  // A finite family of morphisms that generates the category together with
  // the identities. Naturality constraints are assembled over these.
  struct Generator {
    std::size_t source = 0, target = 0;
    Vec coords;
    std::string label;
  };
  virtual std::vector<Generator> generators() const = 0;

  // True when f has no identity component (only meaningful for a == b; for
  // a != b every morphism is radical).
  bool is_radical(std::size_t a, std::size_t b, const Vec& f) const;

  std::size_t total_hom_dim() const;
};

// A morphism of a category, tagged with its endpoints.
struct Morphism {
  std::size_t source = 0, target = 0;
  Vec coords;
};

// The bound quiver category kQ/(I + J^n): all paths of length < n modulo the
// two-sided ideal generated by the relations, truncated at length n.
class BoundCategory : public Category {
public:
  struct BuildReport {
    // Whether every length-n path already reduces to zero using the
    // relations alone (computed in a window one longer than the bound); when
    // false, the truncation J^n is doing real work.
    bool jn_contained_in_relation_ideal = false;
  };

  static BoundCategory build(PrimeField field, Quiver quiver, std::vector<PathCombo> relations,
                             std::uint32_t nilpotency_bound);

  const PrimeField& field() const override { return field_; }
  std::size_t object_count() const override { return quiver_.vertex_count(); }
  const std::string& object_name(std::size_t a) const override {
    return quiver_.vertex_name(static_cast<std::uint32_t>(a));
  }
  std::size_t object_id(const std::string& name) const override { return quiver_.vertex_id(name); }

  std::size_t hom_dim(std::size_t a, std::size_t b) const override {
    return pair(a, b).basis.size();
  }
  std::string basis_label(std::size_t a, std::size_t b, std::size_t k) const override;
  std::size_t identity_index(std::size_t a) const override;
  Vec compose(std::size_t a, std::size_t b, std::size_t c, const Vec& g,
              const Vec& f) const override;
  std::vector<Generator> generators() const override;

  const Quiver& quiver() const { return quiver_; }
  std::uint32_t bound() const { return bound_; }
  const std::vector<PathCombo>& relations() const { return relations_; }
  const BuildReport& build_report() const { return report_; }

  // Path-level access. Paths are the ones of length < bound, ordered
  // length-then-lexicographically.
  std::size_t path_count(std::size_t a, std::size_t b) const { return pair(a, b).paths.size(); }
  const Path& path_at(std::size_t a, std::size_t b, std::size_t k) const {
    return pair(a, b).paths[k];
  }
  const Path& basis_path(std::size_t a, std::size_t b, std::size_t k) const {
    const PairData& pd = pair(a, b);
    return pd.paths[pd.basis[k]];
  }

  // Coordinates of the class of a path / combination. Paths of length >= n
  // reduce to zero.
  Vec reduce_path(const Path& p) const;
  Vec reduce_combo(const PathCombo& c) const;
  Morphism class_of_arrow(std::uint32_t arrow) const;

  // Row echelon basis of the ideal subspace at (a,b), in path coordinates.
  const std::vector<Vec>& ideal_rows(std::size_t a, std::size_t b) const {
    return pair(a, b).ideal_rows;
  }

private:
  struct PairData {
    std::vector<Path> paths;                      // all paths a -> b of length < n
    std::map<std::vector<std::uint32_t>, std::size_t> path_index;
    std::vector<Vec> ideal_rows;                  // RREF rows over path coords
    std::vector<std::size_t> basis;               // non-pivot path indices
    Mat path_to_coords;                           // (basis dim) x (path count)
  };

  const PairData& pair(std::size_t a, std::size_t b) const {
    return pairs_[a * quiver_.vertex_count() + b];
  }

  PrimeField field_{2};
  Quiver quiver_;
  std::vector<PathCombo> relations_;
  std::uint32_t bound_ = 2;
  std::vector<PairData> pairs_;
  BuildReport report_;
};

// A category given by explicit hom dimensions, basis labels and composition
// tensors; the carrier for quotients and other constructed categories.
class TabulatedCategory : public Category {
public:
  TabulatedCategory(PrimeField field, std::vector<std::string> object_names);

  void set_hom(std::size_t a, std::size_t b, std::vector<std::string> labels);
  void set_identity_index(std::size_t a, std::size_t k);
  // Structure constants: the composite of basis element g of Hom(b,c) with
  // basis element f of Hom(a,b), as coordinates in Hom(a,c).
  void set_composition(std::size_t a, std::size_t b, std::size_t c, std::size_t g, std::size_t f,
                       Vec coords);

  // Identity laws, associativity on all basis triples, and locality of every
  // End(a). Throws InternalError on failure; constructions call this before
  // handing the category out.
  void validate() const;

  const PrimeField& field() const override { return field_; }
  std::size_t object_count() const override { return names_.size(); }
  const std::string& object_name(std::size_t a) const override { return names_[a]; }
  std::size_t object_id(const std::string& name) const override;
  std::size_t hom_dim(std::size_t a, std::size_t b) const override {
    return labels_[idx(a, b)].size();
  }
  std::string basis_label(std::size_t a, std::size_t b, std::size_t k) const override {
    return labels_[idx(a, b)][k];
  }
  std::size_t identity_index(std::size_t a) const override;
  Vec compose(std::size_t a, std::size_t b, std::size_t c, const Vec& g,
              const Vec& f) const override;
  std::vector<Generator> generators() const override;

private:
  std::size_t idx(std::size_t a, std::size_t b) const { return a * names_.size() + b; }

  PrimeField field_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> name_ids_;
  std::vector<std::vector<std::string>> labels_;
  // comp_[idx(a,b) * n + c][g]: Mat of shape hom(a,c) x hom(a,b)
  std::map<std::size_t, std::vector<Mat>> comp_;
  std::vector<std::optional<std::size_t>> identity_;
};

// Connectivity of the underlying undirected graph (hom-nonzero graph).
bool is_connected(const Category& cat);

// Every hom space has dimension <= 1.
bool is_schurian(const Category& cat);

struct LocalRingInfo {
  std::size_t end_dim = 0;
  bool local = false;
  std::size_t nilpotency_index = 0;  // of the radical of End(a)
};

struct LocallyBoundedReport {
  bool ok = false;
  std::vector<LocalRingInfo> per_object;
  std::string witness;
};

// Confirms each End(a) = k . id + nilpotent span of the other basis vectors
// and that all hom dimensions are finite (trivially true here); reports the
// witness structure.
LocallyBoundedReport validate_locally_bounded(const Category& cat);

}  // namespace qcov
