#include "dqw/schedule_dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <vector>

namespace dqw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kMaxPiDenominator = 1000;
// Unit fractions of pi are printed symbolically only when they reparse to
// the same double (up to a few ulps), so that formatting stays lossless.
constexpr double kPiFractionTolerance = 1e-15;

enum class Tok { Ident, Number, LParen, RParen, Caret, Semi, Slash, End, Invalid };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier '" + std::string(t.text) + "'";
        case Tok::Number: return "number '" + std::string(t.text) + "'";
        default: return "'" + std::string(t.text) + "'";
    }
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Tok::End, start, {}};
        const char c = src_[pos_];
        auto single = [&](Tok k) {
            ++pos_;
            return Token{k, start, src_.substr(start, 1)};
        };
        switch (c) {
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            case '^': return single(Tok::Caret);
            case ';': return single(Tok::Semi);
            case '/': return single(Tok::Slash);
            default: break;
        }
        if (is_alpha(c)) {
            while (pos_ < src_.size() && is_alpha(src_[pos_])) ++pos_;
            return {Tok::Ident, start, src_.substr(start, pos_ - start)};
        }
        if (is_digit(c) || c == '.' || c == '-' || c == '+') return number(start);
        return single(Tok::Invalid);
    }

  private:
    // [+-]? digits* (. digits*)? ([eE] [+-]? digits+)?, at least one mantissa digit
    Token number(std::size_t start) {
        if (src_[pos_] == '-' || src_[pos_] == '+') ++pos_;
        std::size_t digits = 0;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_, ++digits;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_, ++digits;
        }
        if (digits == 0) return {Tok::Invalid, start, src_.substr(start, std::max<std::size_t>(pos_ - start, 1))};
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && is_digit(src_[p])) {
                while (p < src_.size() && is_digit(src_[p])) ++p;
                pos_ = p;
            }
        }
        return {Tok::Number, start, src_.substr(start, pos_ - start)};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    std::vector<ScheduleTerm> schedule() {
        std::vector<ScheduleTerm> terms;
        terms.push_back(term());
        while (tok_.kind == Tok::Semi) {
            advance();
            terms.push_back(term());
        }
        expect_end("';' or end of input");
        return terms;
    }

    double standalone_angle() {
        const double a = angle();
        expect_end("end of input");
        return a;
    }

  private:
    void advance() { tok_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& expected) const { throw ParseError(tok_.offset, expected, describe(tok_)); }

    void expect(Tok kind, const std::string& what) {
        if (tok_.kind != kind) fail(what);
        advance();
    }

    void expect_end(const std::string& what) const {
        if (tok_.kind != Tok::End) fail(what);
    }

    std::uint64_t positive_integer(const std::string& what) {
        if (tok_.kind != Tok::Number) fail(what);
        std::uint64_t v = 0;
        const auto* first = tok_.text.data();
        const auto* last = first + tok_.text.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || v == 0) fail(what);
        advance();
        return v;
    }

    ScheduleTerm term() {
        const CoinFieldKind kind = kind_spec();
        std::uint64_t reps = 1;
        if (tok_.kind == Tok::Caret) {
            advance();
            reps = positive_integer("positive repetition count");
        }
        return {kind, reps};
    }

    CoinFieldKind kind_spec() {
        constexpr const char* kExpected = "coin field kind (F, D, PF, PD or MIX)";
        if (tok_.kind != Tok::Ident) fail(kExpected);
        const std::string_view name = tok_.text;
        if (name == "D" || name == "PD") {
            advance();
            return name == "D" ? CoinFieldKind::disordered() : CoinFieldKind::pawl_disordered();
        }
        if (name != "F" && name != "PF" && name != "MIX") fail(kExpected);
        advance();
        expect(Tok::LParen, "'('");
        const double theta = angle();
        expect(Tok::RParen, "')'");
        if (name == "F") return CoinFieldKind::fixed(theta);
        if (name == "PF") return CoinFieldKind::pawl_fixed(theta);
        return CoinFieldKind::pawl_mixed(theta);
    }

    bool at_pi() const { return tok_.kind == Tok::Ident && tok_.text == "pi"; }

    // "pi" ["/" n], with the multiplier already consumed.
    double pi_fraction(std::uint64_t multiplier, bool slash_required) {
        advance();  // pi
        if (tok_.kind != Tok::Slash) {
            if (slash_required) fail("'/'");
            return fold_angle(static_cast<double>(multiplier) * kPi);
        }
        advance();
        const std::uint64_t denom = positive_integer("positive integer denominator");
        return fold_angle(static_cast<double>(multiplier) * kPi / static_cast<double>(denom));
    }

    double angle() {
        constexpr const char* kExpected = "angle";
        if (at_pi()) return pi_fraction(1, false);
        if (tok_.kind != Tok::Number) fail(kExpected);

        const Token number = tok_;
        advance();
        if (at_pi()) {
            std::uint64_t m = 0;
            const auto* first = number.text.data();
            const auto* last = first + number.text.size();
            const auto [ptr, ec] = std::from_chars(first, last, m);
            if (ec != std::errc{} || ptr != last || m == 0) {
                throw ParseError(number.offset, "positive integer multiplier of pi", describe(number));
            }
            return pi_fraction(m, true);
        }

        double v = 0.0;
        std::string_view text = number.text;
        if (!text.empty() && text.front() == '+') text.remove_prefix(1);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
            throw ParseError(number.offset, "finite decimal angle", describe(number));
        }
        return fold_angle(v);
    }

    Lexer lexer_;
    Token tok_{Tok::End, 0, {}};
};

}  // namespace

ParseError::ParseError(std::size_t offset, std::string expected, std::string found)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": expected " + expected + ", found " +
                         found),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Schedule parse_schedule(std::string_view text, std::uint64_t seed, const PawlConfig& pawl) {
    Schedule schedule;
    schedule.terms = Parser(text).schedule();
    schedule.seed = seed;
    schedule.pawl = pawl;
    return schedule;
}

double parse_angle(std::string_view text) { return Parser(text).standalone_angle(); }

std::string format_angle(double theta) {
    theta = fold_angle(theta);
    if (std::abs(theta - kPi) <= kPiFractionTolerance) return "pi";
    for (std::uint64_t n = 2; n <= kMaxPiDenominator; ++n) {
        if (std::abs(theta - kPi / static_cast<double>(n)) <= kPiFractionTolerance) return "pi/" + std::to_string(n);
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", theta);
    return buf;
}

std::string format_schedule(const Schedule& schedule) {
    std::string out;
    for (std::size_t i = 0; i < schedule.terms.size(); ++i) {
        const auto& term = schedule.terms[i];
        if (i > 0) out += " ; ";
        out += keyword(term.kind.type());
        if (term.kind.has_theta()) out += "(" + format_angle(term.kind.theta()) + ")";
        if (term.reps != 1) out += "^" + std::to_string(term.reps);
    }
    return out;
}

}  // namespace dqw
