#pragma once

#include "qcov/krullschmidt.hpp"
#include "qcov/transport.hpp"

namespace qcov {

// The retraction E(a,b): B(Fa,Fb) -> A(a,b), f -> in-lift component of f
// into b from a. Satisfies E(a,b) . F(a,b) = id for every covering.
struct RetractionTable {
  const CoveringCertificate* cert = nullptr;
  std::vector<Mat> maps;  // [a * n + b], shape hom_A(a,b) x hom_B(Fa,Fb)
  bool retraction_of_f = false;  // E . F = id verified on every pair

  const Mat& at(std::size_t a, std::size_t b) const;
};

RetractionTable retraction_table(const CoveringCertificate& cert);

// Square 1 (post-composition with arrows downstairs/upstairs) holds for any
// covering; square 2 (pre-composition) holds exactly for balanced coverings.
struct SquaresReport {
  bool square1 = false;
  bool square2 = false;
  std::string witness1, witness2;
};

SquaresReport check_naturality_squares(const RetractionTable& table);

// The canonical slotwise inclusion X -> F_bullet F_lambda X.
struct EpsilonResult {
  std::shared_ptr<Representation> pushed;    // F_lambda X
  std::shared_ptr<Representation> big;       // F_bullet F_lambda X
  RepMorphism eps;                           // X -> big
  BlockLayout layout;                        // of the push-down
};

EpsilonResult epsilon(const CoveringCertificate& cert, const Representation& x);

struct CleaveResult {
  bool splits = false;
  EpsilonResult embedding;
  std::optional<RepMorphism> retraction;  // r with r . eps = id when it splits
  bool summand_corroborates = false;      // is_direct_summand agrees
};

// Does the canonical mono split? Realizes the Theorem-1 test.
CleaveResult cleaving_test(const CoveringCertificate& cert, const Representation& x,
                           std::uint64_t seed);

}  // namespace qcov
