#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "polyhd/errors.hpp"
#include "polyhd/polynomial.hpp"
#include "polyhd/series.hpp"

namespace polyhd {

// Polynomial text form.
//
//   expression := '-'? term (('+'|'-') term)*
//   term       := coeff ('*' monomial)? | monomial
//   coeff      := natural ('/' natural)?
//   monomial   := var ('^' natural)? ('*' var ('^' natural)?)*
//
// Whitespace is ignored; variable names match [A-Za-z][A-Za-z0-9_]*.
// Printing emits descending graded-lex order, suppresses coefficient 1 and
// renders "+ -c" as "- c".

namespace detail {

class PolyLexer {
public:
    explicit PolyLexer(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    std::size_t column() {
        skip_ws();
        return pos_ + 1;  // 1-based
    }

    char take() {
        skip_ws();
        return s_[pos_++];
    }

    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())); }

    bool at_ident() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c));
    }

    Int take_natural() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected a number", start + 1);
        return Int(s_.substr(start, pos_ - start));
    }

    std::string take_ident() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
        }
        if (pos_ == start) throw ParseError("expected a variable name", start + 1);
        return s_.substr(start, pos_ - start);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_poly(const std::string& text, const std::vector<std::string>& vars,
                             const RingSpec& ring) {
    detail::PolyLexer lex(text);
    std::vector<Polynomial::Term> terms;

    auto var_index = [&](const std::string& name, std::size_t col) -> std::size_t {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        throw UnknownVariable(name, col);
    };

    auto parse_exponent = [&]() -> MultiIndex::Exp {
        Int e = lex.take_natural();
        if (!e.fits_ulong_p() || e.get_ui() > std::numeric_limits<MultiIndex::Exp>::max())
            throw OverflowError("exponent too large: " + e.get_str());
        return static_cast<MultiIndex::Exp>(e.get_ui());
    };

    auto parse_monomial = [&]() -> MultiIndex {
        MultiIndex mi(vars.size());
        while (true) {
            std::size_t col = lex.column();
            std::string name = lex.take_ident();
            std::size_t idx = var_index(name, col);
            MultiIndex::Exp e = 1;
            if (lex.peek() == '^') {
                lex.take();
                e = parse_exponent();
            }
            MultiIndex::Exp s = mi[idx] + e;
            if (s < mi[idx]) throw OverflowError("exponent overflow");
            mi[idx] = s;
            if (lex.peek() != '*') break;
            lex.take();
            if (!lex.at_ident())
                throw ParseError("expected a variable after '*'", lex.column());
        }
        return mi;
    };

    auto parse_term = [&](bool negative) {
        if (lex.at_digit()) {
            Int num = lex.take_natural();
            Rat coeff(num);
            if (lex.peek() == '/') {
                lex.take();
                std::size_t col = lex.column();
                Int den = lex.take_natural();
                if (den == 0) throw ParseError("zero denominator", col);
                coeff = Rat(num, den);
                coeff.canonicalize();
            }
            if (negative) coeff = -coeff;
            MultiIndex mi = MultiIndex::zero(vars.size());
            if (lex.peek() == '*') {
                lex.take();
                if (!lex.at_ident())
                    throw ParseError("expected a variable after '*'", lex.column());
                mi = parse_monomial();
            }
            terms.emplace_back(std::move(mi), canon(coeff, ring));
        } else if (lex.at_ident()) {
            MultiIndex mi = parse_monomial();
            terms.emplace_back(std::move(mi), canon(negative ? -1 : 1, ring));
        } else {
            throw ParseError("expected a term", lex.column());
        }
    };

    bool negative = false;
    if (lex.peek() == '-') {
        lex.take();
        negative = true;
    }
    parse_term(negative);
    while (!lex.eof()) {
        char op = lex.peek();
        if (op != '+' && op != '-')
            throw ParseError(std::string("unexpected character '") + op + "'", lex.column());
        lex.take();
        parse_term(op == '-');
    }
    return Polynomial::from_terms(ring, vars, std::move(terms));
}

namespace detail {

inline std::string monomial_text(const MultiIndex& mi, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t i = 0; i < mi.dim(); ++i) {
        if (mi[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (mi[i] > 1) s += "^" + std::to_string(mi[i]);
    }
    return s;
}

}  // namespace detail

inline std::string to_text(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mi, c] : p.terms()) {
        bool neg = false;
        std::string mag;
        if (p.ring().is_rationals()) {
            neg = c.rational() < 0;
            Rat a = neg ? Rat(-c.rational()) : c.rational();
            mag = a.get_str();
        } else {
            mag = c.to_string();
        }
        if (first) {
            out += neg ? "-" : "";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono = detail::monomial_text(mi, p.vars());
        if (mono.empty())
            out += mag;
        else if (mag == "1")
            out += mono;
        else
            out += mag + "*" + mono;
    }
    return out;
}

/// Series rendered over the concatenated variable list.
inline std::string to_text(const TruncatedSeries& s) { return to_text(s.to_combined_polynomial()); }

}  // namespace polyhd
