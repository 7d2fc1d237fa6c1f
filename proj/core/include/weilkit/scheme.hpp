#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "weilkit/groebner.hpp"

namespace weilkit {

class AffineScheme;
using SchemePtr = std::shared_ptr<const AffineScheme>;

/// Construction record; `parent` points at the ambient scheme for
/// open/closed subschemes.
struct Provenance {
  enum class Kind { raw, open, closed, product, restriction };
  Kind kind = Kind::raw;
  SchemePtr parent;
  std::optional<Poly> open_g;        // open: the inverted function, in the parent ring
  std::vector<Poly> closed_extra;    // closed: the extra equations, in the parent(=own) ring
  std::vector<std::size_t> pruned;   // restriction: indices of dropped component generators
};

/// A finitely presented affine scheme over k or L: Spec coeff[vars]/(gens).
/// Immutable; the grevlex Groebner basis of the ideal is cached lazily.
class AffineScheme : public std::enable_shared_from_this<AffineScheme> {
 public:
  static SchemePtr make(AlgebraPtr base, std::vector<std::string> vars, std::vector<Poly> gens,
                        Provenance prov = {});
  static SchemePtr make(RingPtr ring, std::vector<Poly> gens, Provenance prov = {});

  const RingPtr& ring() const { return ring_; }
  const AlgebraPtr& base() const { return ring_->coeff; }
  const std::vector<std::string>& vars() const { return ring_->vars; }
  std::size_t nvars() const { return ring_->nvars(); }
  const std::vector<Poly>& generators() const { return gens_; }
  const Provenance& provenance() const { return prov_; }

  const GroebnerBasis& gb() const;
  bool is_empty() const { return gb().is_unit(); }
  int dimension() const { return gb().krull_dimension(); }

  std::string describe() const;

 private:
  AffineScheme(RingPtr ring, std::vector<Poly> gens, Provenance prov);

  RingPtr ring_;
  std::vector<Poly> gens_;
  Provenance prov_;
  mutable std::mutex gb_mutex_;
  mutable std::shared_ptr<const GroebnerBasis> gb_;
};

/// A morphism of affine schemes over the same base, as the list of
/// coordinate images (one polynomial on the source per target variable).
/// Construction validates well-definedness by normal forms.
class SchemeMorphism {
 public:
  SchemeMorphism() = default;  // empty; fill via make/identity

  static SchemeMorphism make(SchemePtr source, SchemePtr target, std::vector<Poly> images);
  static SchemeMorphism identity(SchemePtr scheme);

  const SchemePtr& source() const { return source_; }
  const SchemePtr& target() const { return target_; }
  const std::vector<Poly>& images() const { return images_; }

  /// Pull back a polynomial on the target along this morphism.
  Poly pullback(const Poly& p) const;

  /// this . inner  (inner: X -> Y, this: Y -> Z gives X -> Z)
  SchemeMorphism compose(const SchemeMorphism& inner) const;

  bool equals_mod_ideal(const SchemeMorphism& o) const;
  bool is_identity_mod_ideal() const;

  std::string describe() const;

 private:
  SchemePtr source_, target_;
  std::vector<Poly> images_;
};

struct FiberProduct {
  SchemePtr scheme;
  SchemeMorphism to_left;
  SchemeMorphism to_right;
  std::vector<std::size_t> left_vars;   // positions of X's variables in the product ring
  std::vector<std::size_t> right_vars;  // positions of Y's variables
};

/// X x_Z Y along f: X -> Z and g: Y -> Z.
FiberProduct fiber_product(const SchemeMorphism& f, const SchemeMorphism& g);

/// Plain product over the base, i.e. the fiber product over Spec(base).
FiberProduct product(const SchemePtr& x, const SchemePtr& y);

struct OpenSubscheme {
  SchemePtr scheme;          // Rabinowitsch presentation: vars + y, relation y*g - 1
  SchemeMorphism inclusion;  // forgets y
};

OpenSubscheme distinguished_open(const SchemePtr& x, const Poly& g);

struct ClosedSubscheme {
  SchemePtr scheme;
  SchemeMorphism inclusion;  // identity on coordinates
};

ClosedSubscheme closed_subscheme(const SchemePtr& x, std::vector<Poly> extra);

struct ClosedEmbeddingReport {
  bool closed_embedding = false;
  bool empty_source = false;
  /// When surjective: for each source variable, an expression in the target
  /// variables that restricts to it.
  std::vector<std::string> expressions;
  std::string offending_variable;
};

/// Surjectivity of the coordinate ring map, by subalgebra membership via a
/// block elimination order.
ClosedEmbeddingReport is_closed_embedding(const SchemeMorphism& m);

struct SmoothnessReport {
  bool smooth = false;
  bool empty = false;
  int dimension = 0;
  int expected_dimension = 0;
  /// Reduced basis of ideal + Jacobian minors: {1} certifies smoothness,
  /// anything else is the refutation witness.
  std::vector<std::string> jacobian_ideal_basis;
};

/// Jacobian criterion at expected dimension r.
SmoothnessReport is_smooth(const SchemePtr& x, int expected_dim);

struct EtaleReport {
  bool etale = false;
  bool empty_source = false;
  bool used_variable_presentation = false;  // relative z-variables read off the images
  int source_dimension = 0;
  int target_dimension = 0;
  std::vector<std::string> fitting_basis;  // reduced basis of the Fitting ideal test
};

/// Unramified-plus-dimension test: the relative Jacobian minors together
/// with the ideal must generate the unit ideal, and dimensions must agree.
EtaleReport is_etale_morphism(const SchemeMorphism& m);

/// Fresh variable name: `base` if unused, else base with a numeric suffix.
std::string fresh_var_name(const std::string& base, const std::vector<std::string>& taken);

std::string algebra_label(const EtaleAlgebra& a);

}  // namespace weilkit
