#include "flatstrata/presentation.hpp"

#include "flatstrata/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace flatstrata {

Word::Word(std::vector<int> letters) {
  letters_.reserve(letters.size());
  for (int l : letters) {
    if (l == 0)
      throw InputError("Word: letter 0 is not a generator");
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

Word Word::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int &l : out)
    l = -l;
  return Word(std::move(out));
}

Word Word::power(int n) const {
  const Word base = n >= 0 ? *this : inverse();
  Word out;
  for (int i = 0; i < std::abs(n); ++i)
    out = out * base;
  return out;
}

Word operator*(const Word &a, const Word &b) {
  std::vector<int> joined = a.letters_;
  joined.insert(joined.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(joined));
}

Word commutator(const Word &a, const Word &b) { return a * b * a.inverse() * b.inverse(); }

FoxDerivative fox_derivative(const Word &w, int generator) {
  FoxDerivative d;
  const auto &ls = w.letters();
  for (std::size_t k = 0; k < ls.size(); ++k) {
    if (std::abs(ls[k]) - 1 != generator)
      continue;
    if (ls[k] > 0) {
      d.terms.push_back({+1, Word(std::vector<int>(ls.begin(), ls.begin() + k))});
    } else {
      d.terms.push_back({-1, Word(std::vector<int>(ls.begin(), ls.begin() + k + 1))});
    }
  }
  return d;
}

const char *to_string(PresentationKind kind) {
  switch (kind) {
  case PresentationKind::free:
    return "free";
  case PresentationKind::surface:
    return "surface";
  case PresentationKind::cyclic:
    return "cyclic";
  case PresentationKind::circle_times_surface:
    return "circle_times_surface";
  case PresentationKind::custom:
    return "custom";
  }
  return "custom";
}

Word surface_relator(int g, int offset) {
  Word r;
  for (int i = 0; i < g; ++i)
    r = r * commutator(Word::generator(offset + i), Word::generator(offset + g + i));
  return r;
}

namespace {

std::vector<Word> canonical_relators(PresentationKind kind, int parameter) {
  switch (kind) {
  case PresentationKind::free:
    return {};
  case PresentationKind::surface:
    return {surface_relator(parameter)};
  case PresentationKind::cyclic:
    return {Word::generator(0).power(parameter)};
  case PresentationKind::circle_times_surface: {
    std::vector<Word> rs{surface_relator(parameter, 1)};
    const Word c = Word::generator(0);
    for (int i = 1; i <= 2 * parameter; ++i)
      rs.push_back(commutator(c, Word::generator(i)));
    return rs;
  }
  case PresentationKind::custom:
    break;
  }
  return {};
}

int canonical_generator_count(PresentationKind kind, int parameter) {
  switch (kind) {
  case PresentationKind::free:
    return parameter;
  case PresentationKind::surface:
    return 2 * parameter;
  case PresentationKind::cyclic:
    return 1;
  case PresentationKind::circle_times_surface:
    return 2 * parameter + 1;
  case PresentationKind::custom:
    break;
  }
  return -1;
}

std::vector<std::string> indexed_names(const std::string &prefix, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i)
    out.push_back(prefix + std::to_string(i));
  return out;
}

} // namespace

Presentation::Presentation(std::vector<std::string> generator_names, std::vector<Word> relators,
                           PresentationKind kind, int parameter)
    : names_(std::move(generator_names)), relators_(std::move(relators)), kind_(kind),
      parameter_(parameter) {
  const int n = generator_count();
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto &name = names_[i];
    if (name.empty() || name.find_first_of(" \t\n") != std::string::npos)
      throw InputError("Presentation: invalid generator name '" + name + "'");
    if (std::count(names_.begin(), names_.end(), name) > 1)
      throw InputError("Presentation: duplicate generator name '" + name + "'");
  }
  for (const auto &r : relators_) {
    if (r.empty())
      throw InputError("Presentation: empty relator");
    for (int l : r.letters())
      if (std::abs(l) > n)
        throw InputError("Presentation: relator letter out of generator range");
  }
  if (kind_ == PresentationKind::custom)
    return;
  const bool cyclic = kind_ == PresentationKind::cyclic;
  if (cyclic ? parameter_ < 1 : parameter_ < (kind_ == PresentationKind::free ? 0 : 1))
    throw InputError(std::string("Presentation: bad parameter for kind ") + to_string(kind_));
  if (n != canonical_generator_count(kind_, parameter_))
    throw InputError(std::string("Presentation: wrong generator count for kind ") +
                     to_string(kind_));
  if (relators_ != canonical_relators(kind_, parameter_))
    throw InputError(std::string("Presentation: relators do not match kind ") +
                     to_string(kind_));
}

Presentation Presentation::free_group(int g) {
  return Presentation(indexed_names("x", g), {}, PresentationKind::free, g);
}

Presentation Presentation::surface_group(int g) {
  auto names = indexed_names("a", g);
  const auto bs = indexed_names("b", g);
  names.insert(names.end(), bs.begin(), bs.end());
  return Presentation(std::move(names), canonical_relators(PresentationKind::surface, g),
                      PresentationKind::surface, g);
}

Presentation Presentation::cyclic_group(int p) {
  return Presentation({"a"}, canonical_relators(PresentationKind::cyclic, p),
                      PresentationKind::cyclic, p);
}

Presentation Presentation::circle_times_surface(int g) {
  std::vector<std::string> names{"c"};
  const auto as = indexed_names("a", g);
  const auto bs = indexed_names("b", g);
  names.insert(names.end(), as.begin(), as.end());
  names.insert(names.end(), bs.begin(), bs.end());
  return Presentation(std::move(names),
                      canonical_relators(PresentationKind::circle_times_surface, g),
                      PresentationKind::circle_times_surface, g);
}

int Presentation::genus() const {
  if (kind_ == PresentationKind::cyclic || kind_ == PresentationKind::custom)
    throw DomainError(std::string("Presentation: kind ") + to_string(kind_) + " has no genus");
  return parameter_;
}

Word Presentation::parse_word(const std::string &text) const {
  std::istringstream in(text);
  std::vector<int> letters;
  std::string tok;
  while (in >> tok) {
    if (tok == "1")
      continue;
    const auto it = std::find(names_.begin(), names_.end(), tok);
    if (it != names_.end()) {
      letters.push_back(static_cast<int>(it - names_.begin()) + 1);
      continue;
    }
    std::string lower = tok;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    const auto jt = std::find(names_.begin(), names_.end(), lower);
    if (lower != tok && jt != names_.end()) {
      letters.push_back(-(static_cast<int>(jt - names_.begin()) + 1));
      continue;
    }
    throw InputError("parse_word: unknown token '" + tok + "'");
  }
  return Word(std::move(letters));
}

std::string Presentation::format_word(const Word &w) const {
  std::string out;
  for (int l : w.letters()) {
    if (!out.empty())
      out += ' ';
    std::string name = names_.at(std::abs(l) - 1);
    if (l < 0)
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    out += name;
  }
  return out.empty() ? "1" : out;
}

SU2Element evaluate_word(std::span<const SU2Element> images, const Word &w) {
  SU2Element acc;
  for (int l : w.letters()) {
    const auto idx = static_cast<std::size_t>(std::abs(l) - 1);
    if (idx >= images.size())
      throw DomainError("evaluate_word: generator index out of range");
    acc = l > 0 ? acc * images[idx] : acc * images[idx].inverse();
  }
  return acc;
}

SU2Element evaluate_word(const Representation &rep, const Word &w) {
  return evaluate_word(std::span<const SU2Element>(rep.images()), w);
}

Representation::Representation(PresentationPtr presentation, std::vector<SU2Element> images)
    : presentation_(std::move(presentation)), images_(std::move(images)) {
  if (!presentation_)
    throw InputError("Representation: null presentation");
  if (static_cast<int>(images_.size()) != presentation_->generator_count())
    throw InputError("Representation: need one image per generator");
  for (const auto &r : presentation_->relators())
    residual_ = std::max(residual_, evaluate_word(images_, r).distance(SU2Element::identity()));
}

Representation Representation::trivial(PresentationPtr presentation) {
  const auto n = static_cast<std::size_t>(presentation->generator_count());
  return Representation(std::move(presentation), std::vector<SU2Element>(n));
}

void Representation::require_relators(double tol) const {
  if (!(residual_ < tol)) {
    std::ostringstream msg;
    msg << "representation does not satisfy its relators: residual " << residual_
        << " >= " << tol;
    throw DomainError(msg.str());
  }
}

Representation Representation::conjugated(const SU2Element &h) const {
  std::vector<SU2Element> out;
  out.reserve(images_.size());
  for (const auto &x : images_)
    out.push_back(su2_conjugate(x, h));
  return Representation(presentation_, std::move(out));
}

Eigen::MatrixXd fox_matrix(std::span<const Word> words, std::span<const SU2Element> images,
                           const Eigen::MatrixXd &coefficient_basis) {
  const auto d = coefficient_basis.cols();
  const auto n = static_cast<Eigen::Index>(images.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d * static_cast<Eigen::Index>(words.size()), d * n);
  const Eigen::MatrixXd &P = coefficient_basis;
  for (std::size_t r = 0; r < words.size(); ++r) {
    SU2Element prefix;
    for (int l : words[r].letters()) {
      const auto g = static_cast<Eigen::Index>(std::abs(l) - 1);
      if (g >= n)
        throw DomainError("fox_matrix: generator index out of range");
      auto block = m.block(static_cast<Eigen::Index>(r) * d, g * d, d, d);
      if (l > 0) {
        block += P.transpose() * su2_ad(prefix) * P;
        prefix = prefix * images[g];
      } else {
        prefix = prefix * images[g].inverse();
        block -= P.transpose() * su2_ad(prefix) * P;
      }
    }
  }
  return m;
}

Eigen::MatrixXd fox_jacobian_at(const Representation &rep) {
  return fox_matrix(rep.presentation().relators(), rep.images(), Eigen::Matrix3d::Identity());
}

Representation polish_representation(const Representation &rep, double tol, int max_iterations) {
  Representation cur = rep;
  const auto &rels = rep.presentation().relators();
  for (int it = 0; it < max_iterations && !(cur.relator_residual() < tol); ++it) {
    const Eigen::MatrixXd J = fox_jacobian_at(cur);
    Eigen::VectorXd rhs(3 * static_cast<Eigen::Index>(rels.size()));
    for (std::size_t r = 0; r < rels.size(); ++r)
      rhs.segment<3>(3 * static_cast<Eigen::Index>(r)) = -su2_log(evaluate_word(cur, rels[r]));
    const Eigen::VectorXd u = J.completeOrthogonalDecomposition().solve(rhs);
    std::vector<SU2Element> next;
    for (int g = 0; g < cur.presentation().generator_count(); ++g)
      next.push_back(su2_exp(u.segment<3>(3 * g)) * cur.image(g));
    cur = Representation(cur.presentation_ptr(), std::move(next));
  }
  cur.require_relators(tol);
  return cur;
}

} // namespace flatstrata
