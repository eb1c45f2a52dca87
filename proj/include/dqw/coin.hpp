#pragma once

#include <array>
#include <optional>
#include <string>

#include "dqw/rng.hpp"
#include "dqw/state.hpp"

namespace dqw {

// Row-major 2x2 complex matrix acting on (up, down).
struct CoinMatrix {
    std::array<Complex, 4> m{};

    Complex operator()(int r, int c) const noexcept { return m[static_cast<std::size_t>(2 * r + c)]; }
    Complex& operator()(int r, int c) noexcept { return m[static_cast<std::size_t>(2 * r + c)]; }
};

CoinMatrix operator*(const CoinMatrix& a, const CoinMatrix& b) noexcept;
CoinMatrix adjoint(const CoinMatrix& a) noexcept;

/// B(theta) = exp(-i theta sigma_x) = [[cos, -i sin], [-i sin, cos]].
CoinMatrix coin_matrix(double theta) noexcept;

// Folds an angle into [0, 2pi).
double fold_angle(double theta) noexcept;

/// Marked sites that break spatial parity. The reflect site always carries
/// B(pi/2), the pass site B(0).
struct PawlConfig {
    int reflect_site = -1;
    int pass_site = 0;

    friend bool operator==(const PawlConfig&, const PawlConfig&) = default;
};

// Throws std::invalid_argument when the two marked sites coincide.
void validate(const PawlConfig& pawl);

/// Rule assigning a coin angle to every site for one step.
///
///   Fixed          F(theta)  same angle everywhere
///   Disordered     D         one fresh theta_t per step, everywhere
///   PawlFixed      PF(theta) pawl sites + theta elsewhere (W1)
///   PawlDisordered PD        pawl sites + fresh theta_t elsewhere (W2)
///   PawlMixed      MIX(theta) each step is a fair coin flip between one
///                  PF(theta) step and one PD step
class CoinFieldKind {
  public:
    enum class Type { Fixed, Disordered, PawlFixed, PawlDisordered, PawlMixed };

    static CoinFieldKind fixed(double theta) { return {Type::Fixed, theta}; }
    static CoinFieldKind disordered() { return {Type::Disordered, 0.0}; }
    static CoinFieldKind pawl_fixed(double theta) { return {Type::PawlFixed, theta}; }
    static CoinFieldKind pawl_disordered() { return {Type::PawlDisordered, 0.0}; }
    static CoinFieldKind pawl_mixed(double theta) { return {Type::PawlMixed, theta}; }

    Type type() const noexcept { return type_; }
    // Angle parameter in [0, 2pi); 0 for kinds that take none.
    double theta() const noexcept { return theta_; }
    bool has_theta() const noexcept;
    bool has_pawl() const noexcept;

    friend bool operator==(const CoinFieldKind&, const CoinFieldKind&) = default;

  private:
    CoinFieldKind(Type type, double theta) : type_(type), theta_(fold_angle(theta)) {}

    Type type_;
    double theta_;
};

// DSL keyword for the kind: "F", "D", "PF", "PD", "MIX".
std::string keyword(CoinFieldKind::Type type);

/// Coin angles for a single step, with all random draws already made.
struct ResolvedCoinField {
    double background = 0.0;
    std::optional<PawlConfig> pawl;

    double theta_at(int x) const noexcept;
};

/// Draws whatever the kind needs from `rng` and fixes the field for one step.
/// F and PF consume no draws; D and PD consume one; MIX consumes one flip,
/// then one more draw if the flip selected PD.
ResolvedCoinField resolve_coin_field(const CoinFieldKind& kind, const PawlConfig& pawl, RngStream& rng);

}  // namespace dqw
