#pragma once

#include <string>
#include <vector>

#include "archdyn/arch_model.hpp"
#include "archdyn/subshift.hpp"

namespace archdyn {

/// Basis correspondence e_k <-> g_{symbol_of[k]} between H1-source pieces and
/// Schottky symbols (0-based).
struct BridgeConfig {
  int genus = 2;
  std::vector<int> symbol_of;

  /// The identity correspondence.
  static BridgeConfig canonical(int genus);
  /// Throws InvalidArgument unless symbol_of is a bijection that commutes
  /// with k -> k + g (mod 2g).
  void validate() const;
};

/// Element of gr_{2p} V (kind Cohomology, p <= 0) or gr_{2p} W (kind
/// Homology, p >= 1), in coordinates of the canonical bases of v_space and
/// w_space, with a formal factor (2 pi i)^twist carried by the basis.
struct DynElement {
  DynKind kind = DynKind::Cohomology;
  int weight = 0;
  int twist = 0;
  std::vector<Rational> coords;

  bool is_zero() const;
  std::string to_string() const;
  bool operator==(const DynElement&) const = default;
};

/// e_k at (q=1, p <= 0, H1) -> (2 pi i)^p chi_{1-p, k}.
DynElement map_U(const ConeModel& model, const BridgeConfig& config, const GradedElement& x);
/// e_k at (q=2, p' >= 2, H1) -> (2 pi i)^{p'-1} [orbit g_k, traversal p'-1].
DynElement map_U_tilde(const ConeModel& model, const BridgeConfig& config,
                       const GradedElement& y);
/// (2 pi i)^p chi_{1-p,k} -> (2 pi i)^{1-p} [orbit g_k, traversal 1-p].
DynElement duality_Dyn(const DynElement& v);
/// k -> k + g (mod 2g) times (-1)^twist.
DynElement f_infinity_dyn(const DynElement& v);

/// Pairing of a V element with a W element of the dual weight, computed from
/// cylinder representatives and orbits.
PairingValue pair(const DynElement& v, const DynElement& w);

/// Rank of U(e_1), ..., U(e_2g) in Gr_{-p} (exact elimination).
std::size_t image_rank_U(int genus, int p, const ResourceCaps& caps = {});
/// Rank of the matrix pairing the Utilde images at weight p' against the V
/// basis of the dual weight.
std::size_t image_rank_U_tilde(int genus, int p_prime);

struct DiagramRow {
  int weight = 0;
  int basis_index = 0;
  DynElement via_duality;   // D(U(e_k))
  DynElement via_delta;     // Utilde(delta_1(e_k))
  bool commutes = false;
  bool u_equivariant = false;
  bool u_tilde_equivariant = false;
  /// F_inf(D v) = -D(F_inf v): equivariance with the sign of F_inf on R(1),
  /// the value group of the pairing.
  bool d_equivariant = false;
  PairingValue pairing;  // <U(e_k), D(U(e_k))>
};

struct DiagramReport {
  int genus = 0;
  int p_lo = 0;
  int p_hi = 0;
  std::vector<DiagramRow> rows;
  std::string first_failure;

  bool passed() const { return first_failure.empty(); }
};

/// Checks D U = Utilde delta_1 and the equivariance of U, Utilde and D on every
/// basis vector for p in [p_lo, p_hi] (p_hi <= 0).
DiagramReport check_diagram(int genus, int p_lo, int p_hi, unsigned workers = 1,
                            const BridgeConfig* config = nullptr);

}  // namespace archdyn
