#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "qcov/category.hpp"

namespace qcov {

// A finite-dimensional representation of a category: a vector space per
// object and, internally, the action matrix of every hom-basis element.
// Representations of presented categories are determined by arrow matrices;
// constructed categories get their action tensors directly.
class Representation {
public:
  // Validates that relation generators and all length-n arrow products
  // evaluate to zero.
  static Representation from_arrow_matrices(const BoundCategory& cat, std::vector<std::size_t> dims,
                                            std::vector<Mat> arrow_matrices);
  // Validates identity actions and compositivity on all basis pairs.
  static Representation from_action(const Category& cat, std::vector<std::size_t> dims,
                                    std::vector<std::vector<std::vector<Mat>>> action);

  const Category& category() const { return *cat_; }
  std::size_t dim(std::size_t a) const { return dims_[a]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const;

  // Action of the k-th basis element of Hom(a,b): a dim(b) x dim(a) matrix.
  const Mat& action(std::size_t a, std::size_t b, std::size_t k) const {
    return act_[a * cat_->object_count() + b][k];
  }
  // Action of an arbitrary morphism given by coordinates.
  Mat evaluate(std::size_t a, std::size_t b, const Vec& coords) const;
  Mat evaluate(const Morphism& f) const { return evaluate(f.source, f.target, f.coords); }
  // Arrow matrices (presented categories only).
  Mat arrow_matrix(std::uint32_t arrow) const;

  bool operator==(const Representation& o) const {
    return cat_ == o.cat_ && dims_ == o.dims_ && act_ == o.act_;
  }

private:
  const Category* cat_ = nullptr;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Mat>> act_;  // [a * n + b][basis index]
};

Representation zero_representation(const Category& cat);
Representation simple_representation(const Category& cat, std::size_t a);
// P_a = Hom(a,-) with morphisms acting by post-composition.
Representation projective_representation(const Category& cat, std::size_t a);
// I_b = D Hom(-,b) with morphisms acting by transposed pre-composition.
Representation injective_representation(const Category& cat, std::size_t b);

// A morphism of representations: one matrix per object, intertwining the
// actions.
struct RepMorphism {
  const Representation* source = nullptr;
  const Representation* target = nullptr;
  std::vector<Mat> components;
};

bool is_rep_morphism(const RepMorphism& u);
RepMorphism identity_rep_morphism(const Representation& x);
RepMorphism compose(const RepMorphism& g, const RepMorphism& f);
RepMorphism add(const RepMorphism& a, const RepMorphism& b);
RepMorphism scale(fp_t c, const RepMorphism& a);
bool is_zero(const RepMorphism& u);
bool is_identity(const RepMorphism& u);

// Basis of Hom(X, Y), solved from the intertwining constraints over the
// category's generators.
std::vector<RepMorphism> hom_space(const Representation& x, const Representation& y);

// Bundles below own their representation through a shared_ptr so the
// morphisms' endpoint pointers stay valid when the bundle is moved around.
struct DirectSum {
  std::shared_ptr<Representation> rep;
  std::vector<RepMorphism> inclusions;   // summand -> sum
  std::vector<RepMorphism> projections;  // sum -> summand
};

DirectSum direct_sum(const std::vector<const Representation*>& parts);

struct SubRep {
  std::shared_ptr<Representation> rep;
  RepMorphism inclusion;  // rep -> ambient
};

struct QuotientRep {
  std::shared_ptr<Representation> rep;
  RepMorphism projection;  // ambient -> rep
};

// rad(X)(b) = sum of images of all radical basis morphisms into b.
SubRep radical(const Representation& x);
// top(X) = X / rad(X).
QuotientRep top(const Representation& x);

// Seeded generator: a random direct sum of simples, projectives and
// injectives of total dimension <= max_total, conjugated by random
// invertible matrices. Always a valid representation.
Representation random_representation(const Category& cat, std::uint64_t seed,
                                     std::size_t max_total);

// Random element of Hom(X, Y) (zero morphism when the hom space is 0).
RepMorphism random_hom_element(const Representation& x, const Representation& y,
                               std::mt19937_64& rng);

}  // namespace qcov
