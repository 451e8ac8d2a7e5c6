#pragma once

#include "flatstrata/su2.hpp"
#include "flatstrata/tolerances.hpp"

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace flatstrata {

// Freely reduced word over signed, 1-based generator indices:
// +k is generator k-1, -k its inverse.
class Word {
public:
  Word() = default;
  // Reduces freely; throws InputError on a zero letter.
  explicit Word(std::vector<int> letters);

  static Word generator(int index) { return Word({index + 1}); }

  const std::vector<int> &letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word power(int n) const;

  friend Word operator*(const Word &a, const Word &b);
  friend bool operator==(const Word &, const Word &) = default;

private:
  std::vector<int> letters_;
};

Word commutator(const Word &a, const Word &b);

// Left Fox derivative: d(uv) = du + u dv, dx/dx = 1, dx^{-1}/dx = -x^{-1}.
struct FoxDerivative {
  struct Term {
    int sign = 1;
    Word prefix;
    friend bool operator==(const Term &, const Term &) = default;
  };
  std::vector<Term> terms;
};

FoxDerivative fox_derivative(const Word &w, int generator);

enum class PresentationKind { free, surface, cyclic, circle_times_surface, custom };

const char *to_string(PresentationKind kind);

class Presentation {
public:
  // Checks the structural invariant of `kind`; `parameter` is the genus for
  // free/surface/circle_times_surface and the order for cyclic.
  Presentation(std::vector<std::string> generator_names, std::vector<Word> relators,
               PresentationKind kind = PresentationKind::custom, int parameter = 0);

  static Presentation free_group(int g);
  static Presentation surface_group(int g);
  static Presentation cyclic_group(int p);
  static Presentation circle_times_surface(int g);

  const std::vector<std::string> &generator_names() const { return names_; }
  const std::vector<Word> &relators() const { return relators_; }
  int generator_count() const { return static_cast<int>(names_.size()); }
  int relator_count() const { return static_cast<int>(relators_.size()); }
  PresentationKind kind() const { return kind_; }
  int parameter() const { return parameter_; }
  int genus() const;

  // Tokens separated by whitespace; a token equal to a generator name is that
  // generator, a token whose lowercase form is a generator name (and differs
  // from it) is its inverse. "1" or an empty string is the empty word.
  Word parse_word(const std::string &text) const;
  std::string format_word(const Word &w) const;

private:
  std::vector<std::string> names_;
  std::vector<Word> relators_;
  PresentationKind kind_;
  int parameter_;
};

// prod_i [x_{offset+i}, x_{offset+g+i}]
Word surface_relator(int g, int offset = 0);

using PresentationPtr = std::shared_ptr<const Presentation>;

// One SU(2) image per generator of a presentation.
class Representation {
public:
  Representation(PresentationPtr presentation, std::vector<SU2Element> images);

  static Representation trivial(PresentationPtr presentation);

  const Presentation &presentation() const { return *presentation_; }
  const PresentationPtr &presentation_ptr() const { return presentation_; }
  const std::vector<SU2Element> &images() const { return images_; }
  const SU2Element &image(int generator) const { return images_.at(generator); }
  // max over relators of |evaluate(relator) - 1|
  double relator_residual() const { return residual_; }

  // Throws DomainError when the residual is not below tol.
  void require_relators(double tol) const;

  // Simultaneous conjugation x -> h x h^{-1}.
  Representation conjugated(const SU2Element &h) const;

private:
  PresentationPtr presentation_;
  std::vector<SU2Element> images_;
  double residual_ = 0.0;
};

SU2Element evaluate_word(std::span<const SU2Element> images, const Word &w);
SU2Element evaluate_word(const Representation &rep, const Word &w);

// Jacobian of `words` under the coefficient action x -> P^T Ad(x) P, with P
// an orthonormal (3 x d) basis of an Ad-invariant subspace. Block (r, g) is
// sum over Fox terms of sign * P^T Ad(prefix) P. Applied to a cochain u it
// returns the cocycle values u(word).
Eigen::MatrixXd fox_matrix(std::span<const Word> words, std::span<const SU2Element> images,
                           const Eigen::MatrixXd &coefficient_basis);

// 3m x 3n Fox Jacobian of the relators with adjoint coefficients; the
// kernel is Z^1.
Eigen::MatrixXd fox_jacobian_at(const Representation &rep);

// Gauss-Newton projection onto the relator variety: repeatedly solves
// J u = -log(relator values) in the least-squares sense and moves
// x_g -> exp(u_g) x_g. Stops when the residual drops below tol.
Representation polish_representation(const Representation &rep, double tol,
                                     int max_iterations = 50);

} // namespace flatstrata
