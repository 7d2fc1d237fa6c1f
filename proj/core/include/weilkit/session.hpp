#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weilkit/bundle.hpp"
#include "weilkit/points.hpp"

namespace weilkit {

/// A parsed command, with its declaration references resolved and typed.
struct Command {
  enum class Verb { restrict, points, verify };
  Verb verb = Verb::verify;
  std::string target;              // verify target name
  std::string text;                // original statement, for the report echo
  std::vector<std::string> names;  // referenced declarations, in order
  std::optional<TestAlgebra> algebra;
  std::optional<Poly> poly_arg;
  int int_arg = 0;
  bool expect_refuted = false;
  int line = 0;
};

/// One session: an ordered set of named declarations plus the command list.
/// Names are unique across kinds; every reference resolves backwards.
class Session {
 public:
  std::map<std::string, BaseField> fields;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, SchemePtr> schemes;
  std::map<std::string, SchemeMorphism> morphisms;
  std::map<std::string, BundlePresentation> bundles;
  std::vector<std::string> declaration_order;
  std::vector<Command> commands;

  bool has_name(const std::string& n) const;
  /// The coefficient algebra a "over NAME" clause refers to.
  AlgebraPtr coefficient_algebra(const std::string& name) const;
};

/// Parses declarations and commands; throws Error with line/column context
/// (SyntaxError, NameError, TypeMismatch).
Session parse_session(const std::string& text);

/// Polynomial sub-parser over a fixed ring, shared with the tests:
/// integer/rational coefficients, `t` reserved for the algebra generator,
/// `^` for powers, `*` explicit.
Poly parse_polynomial(const RingPtr& ring, const std::string& text);

}  // namespace weilkit
