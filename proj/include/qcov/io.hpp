#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "qcov/galois.hpp"
#include "qcov/representation.hpp"

namespace qcov {

// Loads and caches the JSON file formats, resolving cross-references
// relative to the referencing file. One field prime per workspace: the first
// loaded category fixes it unless an override is given, and later files must
// agree. With an override, all coefficients are reinterpreted modulo the
// override prime.
class Workspace {
public:
  explicit Workspace(std::optional<fp_t> prime_override = std::nullopt);

  const BoundCategory& category(const std::string& path);
  const LinearFunctor& functor(const std::string& path);
  const Representation& representation(const std::string& path);
  const FiniteGroup& group(const std::string& path);
  // The action bundled in a group file (requires its "action" and "category").
  const GroupAction& action(const std::string& path);
  const Grading& grading(const std::string& path);

  struct QuiverMapFile {
    const BoundCategory* source = nullptr;
    const BoundCategory* target = nullptr;
    QuiverMap map;
  };
  const QuiverMapFile& quiver_map(const std::string& path);

  // Paths of the categories a loaded functor file referenced.
  struct FunctorRefs {
    std::string source, target;
  };
  const FunctorRefs& functor_refs(const std::string& path) const;

  std::optional<fp_t> prime() const;

private:
  std::string canonical(const std::string& path) const;
  const PrimeField& field_for(fp_t file_prime, const std::string& path);

  std::optional<fp_t> override_;
  std::optional<PrimeField> field_;
  std::map<std::string, std::unique_ptr<BoundCategory>> categories_;
  std::map<std::string, std::unique_ptr<LinearFunctor>> functors_;
  std::map<std::string, FunctorRefs> functor_refs_;
  std::map<std::string, std::unique_ptr<Representation>> representations_;
  std::map<std::string, std::unique_ptr<FiniteGroup>> groups_;
  std::map<std::string, std::unique_ptr<GroupAction>> actions_;
  std::map<std::string, std::unique_ptr<Grading>> gradings_;
  std::map<std::string, std::unique_ptr<QuiverMapFile>> quiver_maps_;
};

// Serialization (used by the CLI to emit categories, representations and
// gradings in the same formats the loader reads).
std::string category_to_json(const BoundCategory& cat);
std::string representation_to_json(const Representation& rep, const std::string& category_ref);
std::string grading_to_json(const Grading& grading, const std::string& category_ref,
                            const std::string& group_ref);
std::string functor_to_json(const LinearFunctor& f, const std::string& source_ref,
                            const std::string& target_ref);

// Parses a morphism given as a path-combination JSON array over a category.
Morphism parse_morphism(const BoundCategory& cat, const std::string& json_text);

}  // namespace qcov
