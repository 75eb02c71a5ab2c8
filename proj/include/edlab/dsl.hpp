#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edlab/group.hpp"

namespace edlab {

enum class AtomKind { C, D, Q, QD, S, A, SL, GL, PSL };

std::string_view atom_name(AtomKind k);

/// A word in the generators of the normal part: (generator index, exponent).
using Word = std::vector<std::pair<int, int>>;

/// How one generator of the acting group acts on the normal part.
struct ActionSpec {
  enum class Kind { GeneratorImages, IntegerMatrix };
  Kind kind = Kind::GeneratorImages;
  /// GeneratorImages: (normal generator index, image word); unlisted
  /// generators are fixed.
  std::vector<std::pair<int, Word>> images;
  /// IntegerMatrix: row i is the exponent vector of the image of generator i.
  std::vector<std::vector<long>> matrix;

  friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

/// AST of the group-construction language.
///
///   expr  := prod
///   prod  := semi { "x" semi }
///   semi  := unit [ ":" unit action-block ]
///   unit  := ( kind "(" int {"," int} ")" | "perm" "[" gens "]" | "(" expr ")" ) [ "^" int ]
///
/// D, Q and QD take the group order as parameter.
struct Construction {
  enum class Kind { Atom, DirectProduct, Semidirect, ExplicitPerms };
  Kind kind = Kind::Atom;
  AtomKind atom = AtomKind::C;
  std::vector<long> params;
  /// DirectProduct: factors. Semidirect: {normal, actor}.
  std::vector<Construction> parts;
  /// Semidirect: one entry per acting generator (missing ones act trivially).
  std::vector<ActionSpec> actions;
  /// ExplicitPerms: each generator as a list of 0-based cycles.
  std::vector<std::vector<std::vector<std::size_t>>> perm_generators;
  /// Direct power exponent applied to this node.
  int power = 1;

  // Source span [begin, end) for diagnostics; ignored by comparisons.
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Construction& a, const Construction& b) {
    return a.kind == b.kind && a.atom == b.atom && a.params == b.params && a.parts == b.parts &&
           a.actions == b.actions && a.perm_generators == b.perm_generators && a.power == b.power;
  }
};

/// Throws SyntaxError (with position) or SemanticError.
Construction parse_construction(std::string_view text);
/// Canonical text; parse(to_string(c)) == c.
std::string to_string(const Construction& c);

/// Generators of a realized construction, in construction order (used to
/// name the normal part's generators a, b, c, ... in action blocks).
struct RealizedGenerators {
  std::size_t degree = 1;
  std::vector<Perm> generators;
  std::size_t order = 1;
};

RealizedGenerators realize_generators(const Construction& c);
/// Throws ActionNotAutomorphism, RealizationTooLarge, SemanticError.
GroupTable realize_construction(const Construction& c);
GroupTable realize(std::string_view text);

}  // namespace edlab
