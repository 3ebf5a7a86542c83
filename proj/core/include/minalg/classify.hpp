#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minalg/algebra.hpp"
#include "minalg/bivector.hpp"

namespace minalg {

enum class FamilyKind { None, Lambda, LambdaMinusOne };

// A row of the canonical registry: label, signature, and the differentials
// of the canonical model ("a" marks the square-class parameter slot).
struct RegistryRow {
  std::string base;
  int dim = 0;
  std::vector<int> signature;
  std::string diffs;  // ";"-separated, one expression per generator
  FamilyKind family = FamilyKind::None;
};

const std::vector<RegistryRow>& registry();
const RegistryRow* registry_find(const std::string& base);

// Instantiates a registry row over `mode`; `param` substitutes the "a" slot
// verbatim (no square-class validation -- canonical_model() adds that).
MinimalAlgebra instantiate_row(const RegistryRow& row, const FieldMode& mode,
                               std::optional<Scalar> param = std::nullopt);

struct ClassLabel {
  std::string base;                  // "A6", "L6_8", "L5_2+A1", ...
  std::optional<SquareClass> param;  // for the four parametric families
  bool family = false;               // symbolic family entry (Q enumeration)
  std::vector<int> signature;

  // "A6", "L6_8[a=-1]", "L6_2[a]" (symbolic family)
  std::string str() const;
  bool operator==(const ClassLabel& o) const {
    return base == o.base && param == o.param && family == o.family;
  }
  bool operator!=(const ClassLabel& o) const { return !(*this == o); }
};

struct Classification {
  // Label in the requested mode's semantics (for R/C this is the label after
  // square-class collapse of the rational parameter).
  ClassLabel label;
  // Label under the arithmetic field (Q for modes Q/R/C, Fp for Fp); the
  // isomorphism witness below targets this label's canonical model.
  ClassLabel arithmetic_label;
  // Rows express the canonical generators in input coordinates:
  // change_basis(input, iso) == target, coefficient for coefficient.
  Matrix iso;
  MinimalAlgebra target;
};

// The case machine: validates, computes the filtration, walks the signature
// case, and produces the canonical label plus an exact isomorphism witness.
// Throws UnreachableSignature for signatures that cannot occur in valid
// inputs; that always indicates an internal bug.
Classification classify(const MinimalAlgebra& a);

// Canonical model for a label over `mode`.  Parametric labels take their
// parameter from label.param; UnknownLabel / ParameterNotAllowed on misuse
// (e.g. the trivial class for the Λ−{1} families, or any parameter over C
// for L6_2 / L6_12).
MinimalAlgebra canonical_model(const ClassLabel& label, const FieldMode& mode);
MinimalAlgebra canonical_model(const std::string& base, const FieldMode& mode);

// Complete duplicate-free list of classes of the given dimension.  Over Q
// the four dim-6 parametric families are returned as single symbolic
// entries (family = true); finite-class modes enumerate representatives.
std::vector<ClassLabel> enumerate_classes(const FieldMode& mode, int dim);

// k-homotopy equivalence of two rational algebras: same registry line and,
// for parametric families, the same class in Q*/((k*)^2 ∩ Q*).
bool homotopy_equivalent(const MinimalAlgebra& a, const MinimalAlgebra& b,
                         const FieldMode& mode);

}  // namespace minalg
