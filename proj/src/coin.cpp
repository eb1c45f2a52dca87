#include "dqw/coin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dqw {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CoinMatrix operator*(const CoinMatrix& a, const CoinMatrix& b) noexcept {
    CoinMatrix out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
        }
    }
    return out;
}

CoinMatrix adjoint(const CoinMatrix& a) noexcept {
    CoinMatrix out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) out(r, c) = std::conj(a(c, r));
    }
    return out;
}

CoinMatrix coin_matrix(double theta) noexcept {
    const double c = std::cos(theta);
    const Complex off{0.0, -std::sin(theta)};
    return CoinMatrix{{Complex{c, 0.0}, off, off, Complex{c, 0.0}}};
}

double fold_angle(double theta) noexcept {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r < kTwoPi ? r : 0.0;
}

void validate(const PawlConfig& pawl) {
    if (pawl.reflect_site == pawl.pass_site) {
        throw std::invalid_argument("pawl reflect and pass sites must differ");
    }
}

bool CoinFieldKind::has_theta() const noexcept {
    return type_ == Type::Fixed || type_ == Type::PawlFixed || type_ == Type::PawlMixed;
}

bool CoinFieldKind::has_pawl() const noexcept {
    return type_ == Type::PawlFixed || type_ == Type::PawlDisordered || type_ == Type::PawlMixed;
}

std::string keyword(CoinFieldKind::Type type) {
    switch (type) {
        case CoinFieldKind::Type::Fixed: return "F";
        case CoinFieldKind::Type::Disordered: return "D";
        case CoinFieldKind::Type::PawlFixed: return "PF";
        case CoinFieldKind::Type::PawlDisordered: return "PD";
        case CoinFieldKind::Type::PawlMixed: return "MIX";
    }
    return "?";
}

double ResolvedCoinField::theta_at(int x) const noexcept {
    if (pawl) {
        if (x == pawl->reflect_site) return std::numbers::pi / 2.0;
        if (x == pawl->pass_site) return 0.0;
    }
    return background;
}

ResolvedCoinField resolve_coin_field(const CoinFieldKind& kind, const PawlConfig& pawl, RngStream& rng) {
    using Type = CoinFieldKind::Type;
    switch (kind.type()) {
        case Type::Fixed: return {kind.theta(), std::nullopt};
        case Type::Disordered: return {rng.draw_theta(), std::nullopt};
        case Type::PawlFixed: return {kind.theta(), pawl};
        case Type::PawlDisordered: return {rng.draw_theta(), pawl};
        case Type::PawlMixed:
            if (rng.draw_bit()) return {kind.theta(), pawl};
            return {rng.draw_theta(), pawl};
    }
    throw std::logic_error("unknown coin field kind");
}

}  // namespace dqw
