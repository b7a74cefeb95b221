#include "archdyn/bridge.hpp"

#include <algorithm>
#include <sstream>

#include "archdyn/errors.hpp"
#include "archdyn/parallel.hpp"

namespace archdyn {

namespace {

const BridgeConfig& resolve(const ConeModel& model, const BridgeConfig& config) {
  if (config.genus != model.genus()) {
    throw InvalidArgument("bridge config genus does not match the model");
  }
  return config;
}

std::vector<Rational> to_symbols(const BridgeConfig& config, const std::vector<Rational>& coords) {
  std::vector<Rational> out(coords.size(), Rational(0));
  for (std::size_t k = 0; k < coords.size(); ++k) {
    out[static_cast<std::size_t>(config.symbol_of[k])] = coords[k];
  }
  return out;
}

void require_h1(const GradedElement& x, int degree, const char* what) {
  if (x.piece.degree != degree || x.piece.source != Source::H1) {
    std::ostringstream msg;
    msg << what << ": expected an H1-source element of degree " << degree << ", got "
        << x.piece.label();
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

BridgeConfig BridgeConfig::canonical(int genus) {
  if (genus < 2) throw InvalidArgument("genus must be >= 2");
  BridgeConfig c;
  c.genus = genus;
  for (int k = 0; k < 2 * genus; ++k) c.symbol_of.push_back(k);
  return c;
}

void BridgeConfig::validate() const {
  if (genus < 2) throw InvalidArgument("genus must be >= 2");
  const int n = 2 * genus;
  if (static_cast<int>(symbol_of.size()) != n) {
    throw InvalidArgument("bridge correspondence must have 2g entries");
  }
  std::vector<int> sorted = symbol_of;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < n; ++k) {
    if (sorted[static_cast<std::size_t>(k)] != k) {
      throw InvalidArgument("bridge correspondence is not a bijection");
    }
  }
  for (int k = 0; k < n; ++k) {
    if (symbol_of[static_cast<std::size_t>((k + genus) % n)] !=
        (symbol_of[static_cast<std::size_t>(k)] + genus) % n) {
      throw InvalidArgument("bridge correspondence does not respect k <-> k + g");
    }
  }
}

bool DynElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c == 0; });
}

std::string DynElement::to_string() const {
  std::ostringstream out;
  out << (kind == DynKind::Cohomology ? "V" : "W") << " weight=" << weight << " twist=" << twist
      << " coords=[";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out << ',';
    out << coords[i].get_str();
  }
  out << ']';
  return out.str();
}

DynElement map_U(const ConeModel& model, const BridgeConfig& config, const GradedElement& x) {
  resolve(model, config);
  require_h1(x, 1, "U");
  if (x.piece.weight > 0) throw WindowError("U: weight must be <= 0");
  if (!model.find(x.piece.degree, x.piece.weight, x.piece.source)) {
    throw WindowError("U: weight outside the model window");
  }
  return {DynKind::Cohomology, x.piece.weight, x.piece.weight, to_symbols(config, x.coords)};
}

DynElement map_U_tilde(const ConeModel& model, const BridgeConfig& config,
                       const GradedElement& y) {
  resolve(model, config);
  require_h1(y, 2, "Utilde");
  if (y.piece.weight < 2) throw WindowError("Utilde: weight must be >= 2");
  if (!model.find(y.piece.degree, y.piece.weight, y.piece.source)) {
    throw WindowError("Utilde: weight outside the model window");
  }
  const int w = y.piece.weight - 1;
  return {DynKind::Homology, w, w, to_symbols(config, y.coords)};
}

DynElement duality_Dyn(const DynElement& v) {
  if (v.kind != DynKind::Cohomology) throw InvalidArgument("D: expected a V element");
  if (v.weight > 0) throw WindowError("D: weight must be <= 0");
  const int w = 1 - v.weight;
  return {DynKind::Homology, w, w, v.coords};
}

DynElement f_infinity_dyn(const DynElement& v) {
  const std::size_t n = v.coords.size();
  if (n % 2 != 0) throw InvalidArgument("F_inf: coordinate count must be even");
  const std::size_t g = n / 2;
  DynElement out = v;
  for (std::size_t k = 0; k < n; ++k) out.coords[(k + g) % n] = v.coords[k];
  if (v.twist % 2 != 0) {
    for (auto& c : out.coords) c = -c;
  }
  return out;
}

PairingValue pair(const DynElement& v, const DynElement& w) {
  if (v.kind != DynKind::Cohomology || w.kind != DynKind::Homology) {
    throw InvalidArgument("pair: expected (V element, W element)");
  }
  if (v.coords.size() != w.coords.size() || v.coords.size() % 2 != 0) {
    throw InvalidArgument("pair: coordinate counts differ");
  }
  const int genus = static_cast<int>(v.coords.size() / 2);
  const GradedDynSpace vs = v_space(genus, v.weight);
  const GradedDynSpace ws = w_space(genus, w.weight);
  Rational total(0);
  for (std::size_t a = 0; a < v.coords.size(); ++a) {
    if (v.coords[a] == 0) continue;
    for (std::size_t b = 0; b < w.coords.size(); ++b) {
      if (w.coords[b] == 0) continue;
      total += v.coords[a] * w.coords[b] *
               pair(vs.cohomology_basis[a], ws.homology_basis[b]).value;
    }
  }
  return {total, v.twist + w.twist};
}

std::size_t image_rank_U(int genus, int p, const ResourceCaps& caps) {
  const ConeModel model = ConeModel::build(genus, std::min(p, -1), 2);
  const BridgeConfig config = BridgeConfig::canonical(genus);
  const std::size_t idx = *model.find(1, p, Source::H1);
  const GradedDynSpace vs = v_space(genus, p);
  std::vector<CoinvariantClass> classes;
  for (int k = 0; k < 2 * genus; ++k) {
    const DynElement u = map_U(model, config, model.basis_vector(idx, k));
    CylinderFunction f{-p, {}, p};
    for (std::size_t s = 0; s < u.coords.size(); ++s) {
      if (u.coords[s] != 0) f = f + u.coords[s] * vs.cohomology_basis[s].representative;
    }
    classes.push_back({f, -p});
  }
  return gr_rank(Alphabet(genus), -p, classes, caps);
}

std::size_t image_rank_U_tilde(int genus, int p_prime) {
  const ConeModel model = ConeModel::build(genus, -1, std::max(p_prime, 2));
  const BridgeConfig config = BridgeConfig::canonical(genus);
  const std::size_t idx = *model.find(2, p_prime, Source::H1);
  const int dual = 1 - (p_prime - 1);
  std::vector<SparseVector> rows;
  for (int k = 0; k < 2 * genus; ++k) {
    const DynElement w = map_U_tilde(model, config, model.basis_vector(idx, k));
    std::map<std::size_t, Rational> row;
    for (int b = 0; b < 2 * genus; ++b) {
      DynElement v{DynKind::Cohomology, dual, dual,
                   std::vector<Rational>(static_cast<std::size_t>(2 * genus), Rational(0))};
      v.coords[static_cast<std::size_t>(b)] = 1;
      row[static_cast<std::size_t>(b)] = pair(v, w).value;
    }
    rows.push_back(sparse_from_map(row));
  }
  return exact_rank(rows, static_cast<std::size_t>(2 * genus));
}

DiagramReport check_diagram(int genus, int p_lo, int p_hi, unsigned workers,
                            const BridgeConfig* config) {
  if (p_lo > p_hi) throw InvalidArgument("check_diagram: empty weight range");
  if (p_hi > 0) throw InvalidArgument("check_diagram: weights must be <= 0");
  const BridgeConfig cfg = config ? *config : BridgeConfig::canonical(genus);
  cfg.validate();
  if (cfg.genus != genus) throw InvalidArgument("bridge config genus does not match");
  const ConeModel model = ConeModel::build(genus, std::min(p_lo, -1), std::max(2 - p_lo, 2));

  const auto n_weights = static_cast<std::size_t>(p_hi - p_lo + 1);
  auto per_weight = [&](std::size_t i) {
    const int p = p_lo + static_cast<int>(i);
    const std::size_t idx = *model.find(1, p, Source::H1);
    std::vector<DiagramRow> rows;
    for (int k = 0; k < 2 * genus; ++k) {
      const GradedElement x = model.basis_vector(idx, k);
      DiagramRow row;
      row.weight = p;
      row.basis_index = k;
      const DynElement u = map_U(model, cfg, x);
      row.via_duality = duality_Dyn(u);
      const GradedElement dx = duality_delta(model, x);
      row.via_delta = map_U_tilde(model, cfg, dx);
      row.commutes = row.via_duality == row.via_delta;
      row.u_equivariant = map_U(model, cfg, f_infinity_arch(model, x)) == f_infinity_dyn(u);
      row.u_tilde_equivariant =
          map_U_tilde(model, cfg, f_infinity_arch(model, dx)) == f_infinity_dyn(row.via_delta);
      const DynElement lhs = f_infinity_dyn(duality_Dyn(u));
      DynElement rhs = duality_Dyn(f_infinity_dyn(u));
      for (auto& c : rhs.coords) c = -c;
      row.d_equivariant = lhs == rhs;
      row.pairing = pair(u, row.via_duality);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  const auto chunks = parallel_map(n_weights, workers, per_weight);

  DiagramReport report;
  report.genus = genus;
  report.p_lo = p_lo;
  report.p_hi = p_hi;
  for (const auto& chunk : chunks) {
    for (const auto& row : chunk) {
      if (report.first_failure.empty()) {
        const char* what = !row.commutes               ? "diagram does not commute"
                           : !row.u_equivariant        ? "U is not F_inf-equivariant"
                           : !row.u_tilde_equivariant  ? "Utilde is not F_inf-equivariant"
                           : !row.d_equivariant        ? "D is not F_inf-equivariant"
                                                       : nullptr;
        if (what) {
          std::ostringstream msg;
          msg << what << " at p=" << row.weight << ", e_" << (row.basis_index + 1);
          report.first_failure = msg.str();
        }
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace archdyn
