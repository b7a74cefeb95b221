#include "archdyn/subshift.hpp"

#include <algorithm>

#include "archdyn/errors.hpp"

namespace archdyn {

namespace {

std::size_t branch(const Alphabet& alphabet) {
  return static_cast<std::size_t>(alphabet.size() - 1);
}

std::size_t ipow(std::size_t base, int exponent) {
  std::size_t out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

std::size_t level_dim(const Alphabet& alphabet, int level) {
  return static_cast<std::size_t>(admissible_count(alphabet, level + 1));
}

void check_dim(std::size_t dim, const ResourceCaps& caps, const char* what) {
  if (dim > caps.max_matrix_dim) {
    throw ResourceCapError(std::string(what) + ": ambient dimension " +
                           std::to_string(dim) + " exceeds cap " +
                           std::to_string(caps.max_matrix_dim));
  }
}

// Indices of the refinement of the indicator of `prefix` to words of length
// level + 1: a contiguous block in lexicographic order.
std::pair<std::size_t, std::size_t> refinement_block(const Alphabet& alphabet,
                                                     const ReducedWord& prefix,
                                                     int level) {
  const int extra = level + 1 - static_cast<int>(prefix.size());
  if (extra < 0) throw InvalidArgument("refinement to a coarser level");
  const std::size_t width =
      prefix.empty() ? level_dim(alphabet, level) : ipow(branch(alphabet), extra);
  const std::size_t start = prefix.empty() ? 0 : word_index(alphabet, prefix.letters()) * width;
  return {start, width};
}

void add_block(std::map<std::size_t, Rational>& acc, std::size_t start,
               std::size_t width, const Rational& value) {
  for (std::size_t i = 0; i < width; ++i) acc[start + i] += value;
}

// e_w o T - e_w for the level-m indicator e_w, as a sparse vector at level L.
SparseVector coboundary_generator(const Alphabet& alphabet, const ReducedWord& w,
                                  int ambient_level) {
  std::map<std::size_t, Rational> acc;
  const Symbol first = w[0];
  std::vector<Symbol> letters(w.size() + 1);
  std::copy(w.letters().begin(), w.letters().end(), letters.begin() + 1);
  for (Symbol a = 0; a < alphabet.size(); ++a) {
    if (!alphabet.admissible_pair(a, first)) continue;
    letters[0] = a;
    auto [start, width] = refinement_block(
        alphabet, ReducedWord::unchecked(letters), ambient_level);
    add_block(acc, start, width, Rational(1));
  }
  auto [start, width] = refinement_block(alphabet, w, ambient_level);
  add_block(acc, start, width, Rational(-1));
  return sparse_from_map(acc);
}

void extend_words(const Alphabet& alphabet, std::vector<Symbol>& prefix,
                  std::size_t target_length,
                  std::vector<ReducedWord>& out) {
  if (prefix.size() == target_length) {
    out.push_back(ReducedWord::unchecked(prefix));
    return;
  }
  for (Symbol s = 0; s < alphabet.size(); ++s) {
    if (!prefix.empty() && !alphabet.admissible_pair(prefix.back(), s)) continue;
    prefix.push_back(s);
    extend_words(alphabet, prefix, target_length, out);
    prefix.pop_back();
  }
}

std::vector<ReducedWord> extensions(const Alphabet& alphabet,
                                    const ReducedWord& prefix,
                                    std::size_t target_length) {
  std::vector<ReducedWord> out;
  std::vector<Symbol> letters = prefix.letters();
  extend_words(alphabet, letters, target_length, out);
  return out;
}

void check_function(const Alphabet& alphabet, const CylinderFunction& f) {
  if (f.level < 0) throw InvalidArgument("cylinder function level must be >= 0");
  for (const auto& [w, v] : f.coeffs) {
    if (static_cast<int>(w.size()) != f.level + 1 ||
        !is_admissible(alphabet, w.letters())) {
      throw InvalidArgument("cylinder function key " + w.to_string(alphabet) +
                            " is not an admissible word of length level+1");
    }
  }
}

}  // namespace

Rational CylinderFunction::value(const ReducedWord& w) const {
  auto it = coeffs.find(w);
  return it == coeffs.end() ? Rational(0) : it->second;
}

bool CylinderFunction::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const auto& kv) { return sgn(kv.second) == 0; });
}

CylinderFunction cylinder_indicator(const Alphabet& alphabet,
                                    const ReducedWord& prefix, int level) {
  if (!is_admissible(alphabet, prefix.letters())) {
    throw InvalidArgument("cylinder_indicator: prefix not admissible");
  }
  if (level + 1 < static_cast<int>(prefix.size()) || level < 0) {
    throw InvalidArgument("cylinder_indicator: level too small for prefix");
  }
  CylinderFunction f;
  f.level = level;
  for (auto& w : extensions(alphabet, prefix, static_cast<std::size_t>(level + 1))) {
    f.coeffs.emplace(std::move(w), Rational(1));
  }
  return f;
}

CylinderFunction constant_function(const Alphabet& alphabet, int level,
                                   const Rational& value) {
  CylinderFunction f = cylinder_indicator(alphabet, ReducedWord{}, level);
  for (auto& [w, v] : f.coeffs) v = value;
  return f;
}

CylinderFunction refine(const Alphabet& alphabet, const CylinderFunction& f,
                        int target_level) {
  check_function(alphabet, f);
  if (target_level < f.level) {
    throw InvalidArgument("refine: target level below function level");
  }
  CylinderFunction out;
  out.level = target_level;
  out.twist = f.twist;
  for (const auto& [w, v] : f.coeffs) {
    if (sgn(v) == 0) continue;
    for (auto& ext : extensions(alphabet, w, static_cast<std::size_t>(target_level + 1))) {
      out.coeffs[std::move(ext)] += v;
    }
  }
  return out;
}

CylinderFunction shift_pullback(const Alphabet& alphabet,
                                const CylinderFunction& f) {
  check_function(alphabet, f);
  CylinderFunction out;
  out.level = f.level + 1;
  out.twist = f.twist;
  for (const auto& [w, v] : f.coeffs) {
    if (sgn(v) == 0) continue;
    std::vector<Symbol> letters(w.size() + 1);
    std::copy(w.letters().begin(), w.letters().end(), letters.begin() + 1);
    for (Symbol a = 0; a < alphabet.size(); ++a) {
      if (!alphabet.admissible_pair(a, w[0])) continue;
      letters[0] = a;
      out.coeffs[ReducedWord::unchecked(letters)] += v;
    }
  }
  return out;
}

CylinderFunction operator+(const CylinderFunction& f, const CylinderFunction& h) {
  if (f.level != h.level || f.twist != h.twist) {
    throw InvalidArgument("cylinder functions differ in level or twist");
  }
  CylinderFunction out = f;
  for (const auto& [w, v] : h.coeffs) out.coeffs[w] += v;
  std::erase_if(out.coeffs, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

CylinderFunction operator*(const Rational& alpha, const CylinderFunction& f) {
  CylinderFunction out = f;
  for (auto& [w, v] : out.coeffs) v *= alpha;
  std::erase_if(out.coeffs, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

CylinderFunction coboundary(const Alphabet& alphabet, const CylinderFunction& f) {
  return shift_pullback(alphabet, f) +
         Rational(-1) * refine(alphabet, f, f.level + 1);
}

SparseVector to_sparse(const Alphabet& alphabet, const CylinderFunction& f,
                       int level) {
  check_function(alphabet, f);
  if (level < f.level) throw InvalidArgument("to_sparse: level below function level");
  std::map<std::size_t, Rational> acc;
  for (const auto& [w, v] : f.coeffs) {
    if (sgn(v) == 0) continue;
    auto [start, width] = refinement_block(alphabet, w, level);
    add_block(acc, start, width, v);
  }
  return sparse_from_map(acc);
}

CylinderFunction from_sparse(const Alphabet& alphabet, const SparseVector& v,
                             int level) {
  CylinderFunction f;
  f.level = level;
  for (const auto& [idx, value] : v) {
    f.coeffs.emplace(word_at(alphabet, static_cast<std::size_t>(level + 1), idx), value);
  }
  return f;
}

std::vector<CylinderFunction> coboundary_space(const Alphabet& alphabet, int n,
                                               int m, const ResourceCaps& caps) {
  if (m < 0 || n < 0) throw InvalidArgument("coboundary_space: negative level");
  const int ambient = std::max(n, m + 1);
  const std::size_t dim = level_dim(alphabet, ambient);
  check_dim(dim, caps, "coboundary_space");
  RowEchelon ech(dim);
  const std::size_t sources = level_dim(alphabet, m);
  for (std::size_t i = 0; i < sources; ++i) {
    ech.insert(coboundary_generator(
        alphabet, word_at(alphabet, static_cast<std::size_t>(m + 1), i), ambient));
  }
  std::vector<CylinderFunction> basis;
  for (const auto& row : ech.rows()) basis.push_back(from_sparse(alphabet, row, ambient));
  return basis;
}

CoboundaryQuotient::CoboundaryQuotient(const Alphabet& alphabet, int level,
                                       int source_level, int floor_level,
                                       const ResourceCaps& caps)
    : alphabet_(alphabet),
      level_(level),
      ambient_level_(std::max(level, source_level + 1)),
      ambient_dim_(level_dim(alphabet, ambient_level_)),
      kernel_(ambient_dim_) {
  if (level < 0 || source_level < 0) {
    throw InvalidArgument("CoboundaryQuotient: negative level");
  }
  if (floor_level >= level) {
    throw InvalidArgument("CoboundaryQuotient: floor level must be below level");
  }
  check_dim(ambient_dim_, caps, "CoboundaryQuotient");
  const std::size_t sources = level_dim(alphabet, source_level);
  for (std::size_t i = 0; i < sources; ++i) {
    kernel_.insert(coboundary_generator(
        alphabet, word_at(alphabet, static_cast<std::size_t>(source_level + 1), i),
        ambient_level_));
  }
  if (floor_level >= 0) {
    const std::size_t floor_dim = level_dim(alphabet, floor_level);
    for (std::size_t i = 0; i < floor_dim; ++i) {
      const ReducedWord w =
          word_at(alphabet, static_cast<std::size_t>(floor_level + 1), i);
      auto [start, width] = refinement_block(alphabet, w, ambient_level_);
      std::map<std::size_t, Rational> acc;
      add_block(acc, start, width, Rational(1));
      kernel_.insert(sparse_from_map(acc));
    }
  }
}

std::size_t CoboundaryQuotient::image_rank(
    const std::vector<CylinderFunction>& fs) const {
  RowEchelon ech = kernel_;
  std::size_t added = 0;
  for (const auto& f : fs) {
    if (f.level > ambient_level_) {
      throw InvalidArgument("CoboundaryQuotient: function level above ambient");
    }
    if (ech.insert(to_sparse(alphabet_, f, ambient_level_))) ++added;
  }
  return added;
}

std::size_t CoboundaryQuotient::full_image_rank() const {
  RowEchelon ech = kernel_;
  std::size_t added = 0;
  const std::size_t dim = level_dim(alphabet_, level_);
  for (std::size_t i = 0; i < dim; ++i) {
    const ReducedWord w = word_at(alphabet_, static_cast<std::size_t>(level_ + 1), i);
    auto [start, width] = refinement_block(alphabet_, w, ambient_level_);
    std::map<std::size_t, Rational> acc;
    add_block(acc, start, width, Rational(1));
    if (ech.insert(sparse_from_map(acc))) ++added;
  }
  return added;
}

bool CoboundaryQuotient::is_trivial(const CylinderFunction& f) const {
  return kernel_.contains(to_sparse(alphabet_, f, ambient_level_));
}

std::int64_t rank_F_closed_form(int genus, int n) {
  if (genus < 2 || n < 0) throw InvalidArgument("rank_F_closed_form: bad input");
  const std::int64_t s = 2 * genus;
  if (n == 0) return s;
  std::int64_t r = s;
  for (int i = 1; i < n; ++i) r *= (s - 1);
  return r * (s - 2) + 1;
}

RankResult rank_F(int genus, int n, const ResourceCaps& caps) {
  const Alphabet alphabet(genus);
  if (n < 0) throw InvalidArgument("rank_F: negative level");
  RankResult result;
  result.genus = genus;
  result.level = n;
  for (int m = 0;; ++m) {
    if (m > caps.max_stabilization_level) {
      throw ResourceCapError("rank_F: no stabilization up to source level " +
                             std::to_string(caps.max_stabilization_level));
    }
    const CoboundaryQuotient quotient(alphabet, n, m, -1, caps);
    const auto r = static_cast<std::int64_t>(quotient.full_image_rank());
    result.history.push_back(r);
    const std::size_t k = result.history.size();
    if (k >= 2 && result.history[k - 1] == result.history[k - 2]) {
      result.rank = r;
      int first = m - 1;
      while (first > 0 && result.history[first - 1] == r) --first;
      result.stabilization_m = first;
      return result;
    }
  }
}

std::int64_t gr_dimension(int genus, int n, const ResourceCaps& caps) {
  if (n == 0) return rank_F(genus, 0, caps).rank;
  return rank_F(genus, n, caps).rank - rank_F(genus, n - 1, caps).rank;
}

CoinvariantClass chi_class(int genus, int n, Symbol symbol) {
  const Alphabet alphabet(genus);
  if (n < 1) throw InvalidArgument("chi_class: n must be >= 1");
  if (!alphabet.contains(symbol)) throw InvalidArgument("chi_class: symbol out of range");
  const ReducedWord prefix =
      ReducedWord::unchecked(std::vector<Symbol>(static_cast<std::size_t>(n), symbol));
  return {cylinder_indicator(alphabet, prefix, n - 1), n - 1};
}

std::size_t gr_rank(const Alphabet& alphabet, int graded_level,
                    const std::vector<CoinvariantClass>& classes,
                    const ResourceCaps& caps) {
  const CoboundaryQuotient quotient(alphabet, graded_level, graded_level,
                                    graded_level - 1, caps);
  std::vector<CylinderFunction> fs;
  for (const auto& c : classes) {
    if (c.level > graded_level) {
      throw InvalidArgument("gr_rank: class lives above the graded level");
    }
    fs.push_back(c.representative);
  }
  return quotient.image_rank(fs);
}

bool classes_equal(const Alphabet& alphabet, const CoinvariantClass& a,
                   const CoinvariantClass& b, const ResourceCaps& caps) {
  const int level = std::max(a.representative.level, b.representative.level);
  CylinderFunction fa = refine(alphabet, a.representative, level);
  CylinderFunction fb = refine(alphabet, b.representative, level);
  fa.twist = 0;
  fb.twist = 0;
  const CoboundaryQuotient quotient(alphabet, level, level, -1, caps);
  return quotient.is_trivial(fa + Rational(-1) * fb);
}

OrbitClass make_orbit(const Alphabet& alphabet, const ReducedWord& word,
                      int traversal, int twist) {
  if (word.empty() || !is_cyclically_admissible(alphabet, word.letters())) {
    throw InvalidArgument("make_orbit: word is not cyclically admissible");
  }
  if (traversal < 1) throw InvalidArgument("make_orbit: traversal must be >= 1");
  const std::size_t n = word.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i < n && periodic; ++i) {
      periodic = word[i] == word[(i + d) % n];
    }
    if (periodic) throw InvalidArgument("make_orbit: word is a proper power");
  }
  return {word, traversal, twist};
}

std::vector<OrbitClass> enumerate_periodic(const Alphabet& alphabet, int N,
                                           const ResourceCaps& caps) {
  if (N < 1) throw InvalidArgument("enumerate_periodic: N must be >= 1");
  const auto words = enumerate_admissible(alphabet, static_cast<std::size_t>(N), caps);
  std::vector<OrbitClass> out;
  const std::size_t n = static_cast<std::size_t>(N);
  for (const auto& w : words) {
    if (!alphabet.admissible_pair(w[n - 1], w[0])) continue;
    // Keep only the least rotation; the period is the smallest d with
    // rotation by d equal to w.
    bool least = true;
    std::size_t period = n;
    for (std::size_t r = 1; r < n && least; ++r) {
      int cmp = 0;
      for (std::size_t i = 0; i < n && cmp == 0; ++i) {
        const Symbol a = w[(i + r) % n];
        if (a != w[i]) cmp = a < w[i] ? -1 : 1;
      }
      if (cmp < 0) least = false;
      if (cmp == 0 && period == n) period = r;
    }
    if (!least) continue;
    std::vector<Symbol> primitive(w.letters().begin(),
                                  w.letters().begin() + static_cast<std::ptrdiff_t>(period));
    out.push_back({ReducedWord::unchecked(std::move(primitive)),
                   static_cast<int>(n / period), 0});
  }
  return out;
}

std::int64_t periodic_point_closed_form(int genus, int N) {
  std::int64_t p = 1;
  for (int i = 0; i < N; ++i) p *= (2 * genus - 1);
  return p + genus + ((N % 2 == 0) ? 1 : -1) * (genus - 1);
}

PairingValue pair(const CylinderFunction& f, const OrbitClass& o) {
  const std::size_t period = o.primitive_period();
  if (period == 0) throw InvalidArgument("pair: empty orbit");
  const std::size_t len = static_cast<std::size_t>(f.level + 1);
  Rational sum(0);
  std::vector<Symbol> letters(len);
  for (std::size_t r = 0; r < period; ++r) {
    for (std::size_t i = 0; i < len; ++i) letters[i] = o.cyclic_word[(r + i) % period];
    sum += f.value(ReducedWord::unchecked(letters));
  }
  return {sum * o.traversal, f.twist + o.twist};
}

PairingValue pair(const CoinvariantClass& c, const OrbitClass& o) {
  return pair(c.representative, o);
}

GradedDynSpace v_space(int genus, int p) {
  if (p > 0) throw InvalidArgument("v_space: weight must be <= 0");
  GradedDynSpace space;
  space.kind = DynKind::Cohomology;
  space.weight = p;
  for (Symbol k = 0; k < 2 * genus; ++k) {
    CoinvariantClass c = chi_class(genus, -p + 1, k);
    c.representative.twist = p;
    space.cohomology_basis.push_back(std::move(c));
  }
  return space;
}

GradedDynSpace w_space(int genus, int p) {
  if (p < 1) throw InvalidArgument("w_space: weight must be >= 1");
  const Alphabet alphabet(genus);
  GradedDynSpace space;
  space.kind = DynKind::Homology;
  space.weight = p;
  for (Symbol k = 0; k < 2 * genus; ++k) {
    space.homology_basis.push_back(make_orbit(alphabet, ReducedWord::unchecked({k}), p, p));
  }
  return space;
}

std::int64_t homology_rank_reference(int genus, int N) {
  std::int64_t p = 1;
  for (int i = 0; i < N; ++i) p *= (2 * genus - 1);
  return N % 2 == 0 ? p + 1 : p + (2 * genus - 1);
}

HomologyRankRow homology_rank_report(int genus, int N, const ResourceCaps& caps) {
  const Alphabet alphabet(genus);
  const auto orbits = enumerate_periodic(alphabet, N, caps);
  const std::size_t dim = level_dim(alphabet, N - 1);
  check_dim(dim, caps, "homology_rank_report");
  std::vector<SparseVector> functionals;
  for (const auto& o : orbits) {
    std::map<std::size_t, Rational> acc;
    const std::size_t period = o.primitive_period();
    std::vector<Symbol> letters(static_cast<std::size_t>(N));
    for (std::size_t r = 0; r < period; ++r) {
      for (std::size_t i = 0; i < letters.size(); ++i) {
        letters[i] = o.cyclic_word[(r + i) % period];
      }
      acc[word_index(alphabet, letters)] += o.traversal;
    }
    functionals.push_back(sparse_from_map(acc));
  }
  return {genus, N, homology_rank_reference(genus, N), exact_rank(functionals, dim)};
}

}  // namespace archdyn
