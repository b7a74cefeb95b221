#include "archdyn/schottky.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <fstream>
#include <sstream>

#include "archdyn/errors.hpp"

namespace archdyn {

Alphabet::Alphabet(int genus) : genus_(genus) {
  if (genus < 2) {
    throw InvalidArgument("genus must be >= 2, got " + std::to_string(genus));
  }
}

Symbol Alphabet::inverse(Symbol s) const {
  if (!contains(s)) throw InvalidArgument("symbol out of range");
  return (s + genus_) % size();
}

std::string Alphabet::name(Symbol s) const {
  return "g" + std::to_string(s + 1);
}

bool is_admissible(const Alphabet& alphabet, std::span<const Symbol> letters) {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!alphabet.contains(letters[i])) return false;
    if (i > 0 && !alphabet.admissible_pair(letters[i - 1], letters[i])) {
      return false;
    }
  }
  return true;
}

bool is_cyclically_admissible(const Alphabet& alphabet,
                              std::span<const Symbol> letters) {
  if (!is_admissible(alphabet, letters)) return false;
  if (letters.empty()) return true;
  return alphabet.admissible_pair(letters.back(), letters.front());
}

ReducedWord ReducedWord::from(const Alphabet& alphabet,
                              std::vector<Symbol> letters) {
  if (!is_admissible(alphabet, letters)) {
    throw InvalidArgument("word is not reduced over the alphabet");
  }
  return ReducedWord(std::move(letters));
}

ReducedWord ReducedWord::unchecked(std::vector<Symbol> letters) {
  return ReducedWord(std::move(letters));
}

std::string ReducedWord::to_string(const Alphabet& alphabet) const {
  if (letters_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i > 0) out += '.';
    out += alphabet.name(letters_[i]);
  }
  return out;
}

ReducedWord reduce_word(const Alphabet& alphabet,
                        std::span<const Symbol> letters) {
  std::vector<Symbol> stack;
  stack.reserve(letters.size());
  for (Symbol s : letters) {
    if (!alphabet.contains(s)) {
      throw InvalidArgument("reduce_word: symbol " + std::to_string(s) +
                            " out of range");
    }
    if (!stack.empty() && stack.back() == alphabet.inverse(s)) {
      stack.pop_back();
    } else {
      stack.push_back(s);
    }
  }
  return ReducedWord::unchecked(std::move(stack));
}

std::uint64_t admissible_count(const Alphabet& alphabet, std::size_t length) {
  if (length == 0) return 1;
  std::uint64_t count = static_cast<std::uint64_t>(alphabet.size());
  for (std::size_t i = 1; i < length; ++i) {
    count *= static_cast<std::uint64_t>(alphabet.size() - 1);
  }
  return count;
}

std::size_t word_index(const Alphabet& alphabet,
                       std::span<const Symbol> letters) {
  if (letters.empty()) return 0;
  const std::size_t branch = static_cast<std::size_t>(alphabet.size() - 1);
  std::size_t index = static_cast<std::size_t>(letters[0]);
  for (std::size_t i = 1; i < letters.size(); ++i) {
    const Symbol forbidden = alphabet.inverse(letters[i - 1]);
    const Symbol s = letters[i];
    std::size_t rank = static_cast<std::size_t>(s > forbidden ? s - 1 : s);
    index = index * branch + rank;
  }
  return index;
}

ReducedWord word_at(const Alphabet& alphabet, std::size_t length,
                    std::size_t index) {
  if (length == 0) return {};
  const std::size_t branch = static_cast<std::size_t>(alphabet.size() - 1);
  std::vector<std::size_t> ranks(length);
  for (std::size_t i = length; i-- > 1;) {
    ranks[i] = index % branch;
    index /= branch;
  }
  if (index >= static_cast<std::size_t>(alphabet.size())) {
    throw InvalidArgument("word_at: index out of range");
  }
  std::vector<Symbol> letters(length);
  letters[0] = static_cast<Symbol>(index);
  for (std::size_t i = 1; i < length; ++i) {
    const Symbol forbidden = alphabet.inverse(letters[i - 1]);
    Symbol s = static_cast<Symbol>(ranks[i]);
    if (s >= forbidden) ++s;
    letters[i] = s;
  }
  return ReducedWord::unchecked(std::move(letters));
}

std::vector<ReducedWord> enumerate_admissible(const Alphabet& alphabet,
                                              std::size_t length,
                                              const ResourceCaps& caps) {
  const std::uint64_t count = admissible_count(alphabet, length);
  if (count > caps.max_words) {
    throw ResourceCapError("enumerate_admissible: " + std::to_string(count) +
                           " words exceed cap " +
                           std::to_string(caps.max_words));
  }
  std::vector<ReducedWord> words;
  words.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    words.push_back(word_at(alphabet, length, i));
  }
  return words;
}

namespace {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  const std::size_t n = x.size();
  IntMatrix out(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  }
  return out;
}

IntMatrix power(const TransitionMatrix& a, int exponent) {
  const std::size_t n = a.size();
  IntMatrix result(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = 1;
  IntMatrix base(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) base[i][j] = a.entries[i][j];
  }
  for (int e = 0; e < exponent; ++e) result = multiply(result, base);
  return result;
}

}  // namespace

std::int64_t TransitionMatrix::trace_power(int exponent) const {
  if (exponent < 0) throw InvalidArgument("trace_power: negative exponent");
  IntMatrix p = power(*this, exponent);
  std::int64_t tr = 0;
  for (std::size_t i = 0; i < p.size(); ++i) tr += p[i][i];
  return tr;
}

std::int64_t TransitionMatrix::entry_sum_power(int exponent) const {
  if (exponent < 0) throw InvalidArgument("entry_sum_power: negative exponent");
  IntMatrix p = power(*this, exponent);
  std::int64_t sum = 0;
  for (const auto& row : p) {
    for (auto v : row) sum += v;
  }
  return sum;
}

TransitionMatrix transition_matrix(const Alphabet& alphabet) {
  const int n = alphabet.size();
  TransitionMatrix a;
  a.entries.assign(n, std::vector<int>(n, 1));
  for (Symbol i = 0; i < n; ++i) a.entries[i][alphabet.inverse(i)] = 0;
  return a;
}

MobiusElement::MobiusElement(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  if (std::abs(det) == 0.0 || !std::isfinite(std::abs(det))) {
    throw InvalidArgument("MobiusElement: singular or non-finite matrix");
  }
  const Complex root = std::sqrt(det);
  a_ = a / root;
  b_ = b / root;
  c_ = c / root;
  d_ = d / root;
  trace_ = a_ + d_;
}

MobiusElement MobiusElement::identity() { return {1.0, 0.0, 0.0, 1.0}; }

MobiusElement MobiusElement::diagonal(Complex lambda) {
  return {lambda, 0.0, 0.0, 1.0 / lambda};
}

MobiusElement MobiusElement::inverse() const { return {d_, -b_, -c_, a_}; }

MobiusElement MobiusElement::operator*(const MobiusElement& r) const {
  return {a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_,
          c_ * r.a_ + d_ * r.c_, c_ * r.b_ + d_ * r.d_};
}

bool MobiusElement::is_loxodromic(double tol) const {
  const Complex t2 = trace_ * trace_;
  if (std::abs(t2.imag()) > tol) return true;
  return t2.real() > 4.0 + tol || t2.real() < -tol;
}

double hyperbolic_distance(const H3Point& p, const H3Point& q) {
  const double dx = p.x1 - q.x1;
  const double dy = p.x2 - q.x2;
  const double dt = p.t - q.t;
  const double chord = std::sqrt(dx * dx + dy * dy + dt * dt);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.t * q.t)));
}

H3Point mobius_on_h3(const MobiusElement& m, const H3Point& pt) {
  if (!(pt.t > 0.0)) throw InvalidArgument("mobius_on_h3: t must be > 0");
  const Complex z(pt.x1, pt.x2);
  const Complex num = m.a() * z + m.b();
  const Complex den = m.c() * z + m.d();
  const double t2 = pt.t * pt.t;
  const double scale = std::norm(den) + std::norm(m.c()) * t2;
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("mobius_on_h3: numerical overflow");
  }
  const Complex image = (num * std::conj(den) + m.a() * std::conj(m.c()) * t2) / scale;
  H3Point out{image.real(), image.imag(), pt.t / scale};
  if (!std::isfinite(out.x1) || !std::isfinite(out.x2) ||
      !std::isfinite(out.t) || !(out.t > 0.0)) {
    throw DomainError("mobius_on_h3: numerical overflow");
  }
  return out;
}

P1Point P1Point::from_pair(Complex z, Complex w) {
  const double az = std::abs(z);
  const double aw = std::abs(w);
  if (az == 0.0 && aw == 0.0) {
    throw InvalidArgument("P1Point: (0 : 0) is not a point");
  }
  if (az >= aw) return P1Point{{1.0, 0.0}, w / z};
  return P1Point{z / w, {1.0, 0.0}};
}

double chordal_distance(const P1Point& p, const P1Point& q) {
  const double cross = std::abs(p.z * q.w - q.z * p.w);
  const double np = std::sqrt(std::norm(p.z) + std::norm(p.w));
  const double nq = std::sqrt(std::norm(q.z) + std::norm(q.w));
  return cross / (np * nq);
}

P1Point mobius_on_p1(const MobiusElement& m, const P1Point& pt) {
  return P1Point::from_pair(m.a() * pt.z + m.b() * pt.w,
                            m.c() * pt.z + m.d() * pt.w);
}

namespace {

void require_loxodromic(const MobiusElement& m, const char* what) {
  if (!m.is_loxodromic()) {
    const Complex t2 = m.trace() * m.trace();
    std::string kind = "elliptic";
    if (std::abs(t2 - 4.0) <= 1e-12) {
      kind = (std::abs(m.b()) + std::abs(m.c()) <= 1e-12) ? "the identity"
                                                          : "parabolic";
    }
    throw DomainError(std::string(what) + ": element is " + kind +
                      ", not loxodromic");
  }
}

P1Point eigen_direction(const MobiusElement& m, Complex lambda) {
  const Complex v1z = m.b();
  const Complex v1w = lambda - m.a();
  const Complex v2z = lambda - m.d();
  const Complex v2w = m.c();
  if (std::norm(v1z) + std::norm(v1w) >= std::norm(v2z) + std::norm(v2w)) {
    return P1Point::from_pair(v1z, v1w);
  }
  return P1Point::from_pair(v2z, v2w);
}

// Eigenvalue pair (expanding, contracting).
std::pair<Complex, Complex> eigenvalues(const MobiusElement& m) {
  const Complex tr = m.trace();
  const Complex disc = std::sqrt(tr * tr - 4.0);
  Complex l1 = 0.5 * (tr + disc);
  Complex l2 = 0.5 * (tr - disc);
  if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2);
  // The contracting one is recomputed as 1/l1 to avoid cancellation.
  return {l1, 1.0 / l1};
}

}  // namespace

FixedPoints fixed_points(const MobiusElement& m) {
  require_loxodromic(m, "fixed_points");
  const auto [big, small] = eigenvalues(m);
  return {eigen_direction(m, big), eigen_direction(m, small)};
}

double translation_length(const MobiusElement& m) {
  require_loxodromic(m, "translation_length");
  return 2.0 * std::log(std::abs(eigenvalues(m).first));
}

SchottkyGroup::SchottkyGroup(int genus, std::vector<MobiusElement> generators,
                             H3Point base_point)
    : alphabet_(genus), base_point_(base_point) {
  if (static_cast<int>(generators.size()) != genus) {
    throw InvalidArgument("SchottkyGroup: expected " + std::to_string(genus) +
                          " generators, got " +
                          std::to_string(generators.size()));
  }
  if (!(base_point.t > 0.0)) {
    throw InvalidArgument("SchottkyGroup: base point needs t > 0");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!generators[i].is_loxodromic()) {
      throw InvalidArgument("SchottkyGroup: generator g" +
                            std::to_string(i + 1) + " is not loxodromic");
    }
  }
  matrices_ = generators;
  for (const auto& gen : generators) matrices_.push_back(gen.inverse());
}

SchottkyGroup SchottkyGroup::default_genus2() { return standard(2); }

SchottkyGroup SchottkyGroup::standard(int genus) {
  if (genus < 2 || genus > 7) throw InvalidArgument("standard Schottky group needs 2 <= genus <= 7");
  std::vector<MobiusElement> gens{MobiusElement::diagonal(2.0)};
  if (genus == 2) {
    gens.emplace_back(13.0, 12.0, 12.0, 13.0);
    return SchottkyGroup(2, std::move(gens));
  }
  const MobiusElement h(41.0, 40.0, 40.0, 41.0);
  for (int k = 0; k < genus - 1; ++k) {
    const double theta = std::numbers::pi * k / (genus - 1);
    const MobiusElement r = MobiusElement::diagonal(std::polar(1.0, theta / 2));
    gens.push_back(r * h * r.inverse());
  }
  return SchottkyGroup(genus, std::move(gens));
}

SchottkyGroup SchottkyGroup::from_json_text(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("schottky config: ") + e.what());
  }
  try {
    const int genus = doc.at("genus").get<int>();
    H3Point base{};
    if (doc.contains("base_point")) {
      const auto& bp = doc.at("base_point");
      if (!bp.is_array() || bp.size() != 3) {
        throw ConfigError("schottky config: base_point must be [x1, x2, t]");
      }
      base = {bp[0].get<double>(), bp[1].get<double>(), bp[2].get<double>()};
    }
    auto entry = [](const json& e) {
      if (!e.is_array() || e.size() != 2) {
        throw ConfigError("schottky config: matrix entries are [re, im]");
      }
      return Complex(e[0].get<double>(), e[1].get<double>());
    };
    std::vector<MobiusElement> gens;
    for (const auto& m : doc.at("generators")) {
      if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
        throw ConfigError("schottky config: generators are 2x2 matrices");
      }
      gens.emplace_back(entry(m[0][0]), entry(m[0][1]), entry(m[1][0]),
                        entry(m[1][1]));
    }
    return SchottkyGroup(genus, std::move(gens), base);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("schottky config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("schottky config: ") + e.what());
  }
}

SchottkyGroup SchottkyGroup::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open schottky config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

const MobiusElement& SchottkyGroup::matrix(Symbol s) const {
  if (!alphabet_.contains(s)) throw InvalidArgument("symbol out of range");
  return matrices_[static_cast<std::size_t>(s)];
}

MobiusElement word_to_mobius(const SchottkyGroup& group, const ReducedWord& w) {
  MobiusElement m = MobiusElement::identity();
  for (Symbol s : w.letters()) m = m * group.matrix(s);
  return m;
}

std::vector<LimitPoint> limit_set_sample(const SchottkyGroup& group, int depth,
                                         const ResourceCaps& caps) {
  if (depth < 1) throw InvalidArgument("limit_set_sample: depth must be >= 1");
  std::uint64_t total = 0;
  for (int n = 1; n <= depth; ++n) total += admissible_count(group.alphabet(), n);
  if (total > caps.max_words) {
    throw ResourceCapError("limit_set_sample: " + std::to_string(total) +
                           " words exceed cap");
  }
  std::vector<LimitPoint> out;
  out.reserve(total);
  for (int n = 1; n <= depth; ++n) {
    for (auto& w : enumerate_admissible(group.alphabet(), n, caps)) {
      const MobiusElement m = word_to_mobius(group, w);
      out.push_back({fixed_points(m).attracting, std::move(w)});
    }
  }
  return out;
}

}  // namespace archdyn
