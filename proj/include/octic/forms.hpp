#pragma once

#include "octic/exact.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace octic {

// Malformed equation text or an equation that does not describe distinct planes.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t position, const std::string& what)
        : InputError("ParseError at " + std::to_string(position) + ": " + what), position(position) {}
    std::size_t position;
};

class NonLinearFactor : public InputError {
public:
    explicit NonLinearFactor(std::size_t factor)
        : InputError("NonLinearFactor: factor " + std::to_string(factor + 1) + " has degree > 1"), factor(factor) {}
    std::size_t factor;
};

class DuplicateFactor : public InputError {
public:
    DuplicateFactor(std::size_t i, std::size_t j)
        : InputError("DuplicateFactor: factors " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                     " are proportional"),
          first(i), second(j) {}
    std::size_t first, second;
};

class FormVanishes : public MathError {
public:
    explicit FormVanishes(std::size_t index)
        : MathError("FormVanishes: form " + std::to_string(index + 1) + " is identically zero"), index(index) {}
    std::size_t index;
};

inline constexpr std::array<char, 4> kVariables{'x', 'y', 'z', 't'};

template <class T>
using FormOf = std::array<T, 4>;

using LinearForm = FormOf<Poly>;
using ConstForm = FormOf<Rational>;

struct ParamArrangement {
    std::vector<LinearForm> forms;
    std::string parameter_name = "w";
    std::array<std::string, 4> variable_names{"x", "y", "z", "t"};

    std::size_t size() const { return forms.size(); }
};

struct Arrangement {
    std::vector<ConstForm> forms;
    std::size_t size() const { return forms.size(); }
};

template <class T>
bool is_zero_form(const FormOf<T>& f) {
    for (const auto& c : f)
        if (!is_zero(c)) return false;
    return true;
}

// Proportional forms have all 2x2 minors equal to zero.
template <class T>
bool proportional(const FormOf<T>& a, const FormOf<T>& b) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!is_zero(a[i] * b[j] - a[j] * b[i])) return false;
    return true;
}

namespace detail {

// Affine-linear expression: slot 0 is the constant part, slots 1..4 are x,y,z,t.
using Affine = std::array<Poly, 5>;

inline bool has_variables(const Affine& a) {
    for (int i = 1; i < 5; ++i)
        if (!a[i].is_zero()) return true;
    return false;
}

class EquationParser {
public:
    explicit EquationParser(const std::string& text) : s_(text) {}

    std::vector<std::pair<Affine, std::size_t>> parse() {
        skip();
        parse_prefix();
        std::vector<std::pair<Affine, std::size_t>> factors;
        std::optional<Poly> pending;  // scalar waiting for its variable
        std::size_t pending_pos = 0;
        bool expect_factor = true;
        while (true) {
            skip();
            if (at_end() || peek() == '=') break;
            if (peek() == '*') {
                if (expect_factor) fail("unexpected '*'");
                ++i_;
                expect_factor = true;
                continue;
            }
            std::size_t start = i_;
            char c = peek();
            if (c == '(') {
                ++i_;
                current_factor_ = factors.size();
                Affine a = parse_sum();
                skip();
                expect(')');
                int e = parse_exponent();
                for (int k = 0; k < e; ++k) factors.emplace_back(apply_pending(a, pending), start);
                pending.reset();
            } else if (is_var(c)) {
                ++i_;
                Affine a{};
                a[var_slot(c)] = Poly(1);
                int e = parse_exponent();
                for (int k = 0; k < e; ++k) factors.emplace_back(apply_pending(a, pending), start);
                pending.reset();
            } else if (c == 'w' || std::isdigit(static_cast<unsigned char>(c))) {
                Poly p = parse_scalar_atom();
                pending = pending ? *pending * p : p;
                pending_pos = start;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            expect_factor = false;
        }
        if (pending) {
            if (factors.empty()) fail_at(pending_pos, "scalar without a linear factor");
            auto& last = factors.back().first;
            for (auto& p : last) p = p * *pending;
        }
        if (expect_factor && !factors.empty()) fail("dangling '*'");
        parse_suffix();
        if (factors.empty()) fail("no linear factors");
        return factors;
    }

private:
    static bool is_var(char c) { return c == 'x' || c == 'y' || c == 'z' || c == 't'; }
    static int var_slot(char c) {
        switch (c) {
            case 'x': return 1;
            case 'y': return 2;
            case 'z': return 3;
            default: return 4;
        }
    }

    bool at_end() const { return i_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[i_]; }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(i_, what); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const { throw ParseError(pos, what); }
    void expect(char c) {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i_;
    }

    void parse_prefix() {
        std::size_t save = i_;
        if (peek() == 'u') {
            ++i_;
            skip();
            if (peek() == '^') {
                ++i_;
                skip();
                if (peek() != '2') fail("expected u^2");
                ++i_;
            } else {
                fail("expected '^' after u");
            }
            skip();
            expect('=');
            return;
        }
        if (peek() == '0') {
            ++i_;
            skip();
            if (peek() == '=') {
                ++i_;
                return;
            }
        }
        i_ = save;
    }

    void parse_suffix() {
        skip();
        if (at_end()) return;
        if (peek() == '=') {
            ++i_;
            skip();
            if (peek() == '0') ++i_;
            else fail("expected 0 after '='");
            skip();
        }
        if (!at_end()) fail("trailing input");
    }

    int parse_exponent() {
        skip();
        if (peek() != '^') return 1;
        ++i_;
        skip();
        std::size_t start = i_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
        if (start == i_) fail("expected exponent");
        return std::stoi(s_.substr(start, i_ - start));
    }

    Rational parse_number() {
        std::size_t start = i_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
        Rational r(Integer(s_.substr(start, i_ - start)));
        if (peek() == '/' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
            ++i_;
            std::size_t ds = i_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
            Integer d(s_.substr(ds, i_ - ds));
            if (d == 0) fail_at(ds, "zero denominator");
            r /= Rational(d);
        }
        return r;
    }

    Poly parse_scalar_atom() {
        if (peek() == 'w') {
            ++i_;
            int e = parse_exponent();
            return Poly::monomial(1, static_cast<std::size_t>(e));
        }
        Poly p(parse_number());
        int e = parse_exponent();
        Poly out(1);
        for (int k = 0; k < e; ++k) out = out * p;
        return out;
    }

    static Affine apply_pending(Affine a, const std::optional<Poly>& pending) {
        if (pending)
            for (auto& p : a) p = p * *pending;
        return a;
    }

    Affine parse_sum() {
        skip();
        Affine acc{};
        bool first = true;
        while (true) {
            skip();
            bool neg = false;
            if (peek() == '+' || peek() == '-') {
                neg = peek() == '-';
                ++i_;
            } else if (!first) {
                break;
            }
            Affine t = parse_term();
            for (int k = 0; k < 5; ++k) acc[k] = neg ? acc[k] - t[k] : acc[k] + t[k];
            first = false;
        }
        return acc;
    }

    Affine parse_term() {
        skip();
        Affine acc{};
        acc[0] = Poly(1);
        bool any = false;
        while (true) {
            skip();
            char c = peek();
            if (c == '*') {
                if (!any) fail("unexpected '*'");
                ++i_;
                skip();
                c = peek();
                if (!(c == '(' || c == 'w' || is_var(c) || std::isdigit(static_cast<unsigned char>(c))))
                    fail("expected factor after '*'");
            }
            Affine item{};
            std::size_t start = i_;
            if (c == '(') {
                ++i_;
                item = parse_sum();
                expect(')');
                int e = parse_exponent();
                Affine base = item;
                for (int k = 1; k < e; ++k) item = multiply(item, base, start);
            } else if (is_var(c)) {
                ++i_;
                item[var_slot(c)] = Poly(1);
                if (parse_exponent() != 1) throw_nonlinear(start);
            } else if (c == 'w' || std::isdigit(static_cast<unsigned char>(c))) {
                item[0] = parse_scalar_atom();
            } else {
                break;
            }
            acc = multiply(acc, item, start);
            any = true;
        }
        if (!any) fail("expected term");
        return acc;
    }

    [[noreturn]] void throw_nonlinear(std::size_t) const { throw NonLinearFactor(current_factor_); }

    Affine multiply(const Affine& a, const Affine& b, std::size_t pos) const {
        if (has_variables(a) && has_variables(b)) throw_nonlinear(pos);
        Affine out{};
        if (has_variables(a)) {
            for (int k = 1; k < 5; ++k) out[k] = a[k] * b[0];
            out[0] = a[0] * b[0];
        } else {
            for (int k = 0; k < 5; ++k) out[k] = b[k] * a[0];
        }
        return out;
    }

    std::string s_;
    std::size_t i_ = 0;
    std::size_t current_factor_ = 0;
};

}  // namespace detail

// Parses "u^2 = xy(x+y+w)z"-style products of linear factors. A constant
// term inside a factor is read in the chart t = 1 and homogenized with t.
inline ParamArrangement parse_equation(const std::string& text) {
    auto raw = detail::EquationParser(text).parse();
    ParamArrangement out;
    for (const auto& [aff, pos] : raw) {
        LinearForm f{aff[1], aff[2], aff[3], aff[4] + aff[0]};
        if (is_zero_form(f)) throw ParseError(pos, "factor is identically zero");
        out.forms.push_back(f);
    }
    for (std::size_t i = 0; i < out.forms.size(); ++i)
        for (std::size_t j = i + 1; j < out.forms.size(); ++j)
            if (proportional(out.forms[i], out.forms[j])) throw DuplicateFactor(i, j);
    return out;
}

namespace detail {
inline std::string coefficient_text(const Poly& c, bool& negative) {
    // Returns the absolute coefficient text; sets negative when a single-term
    // coefficient is negative so the caller can emit " - ".
    negative = false;
    int terms = 0;
    for (const auto& a : c.coeffs())
        if (a != 0) ++terms;
    if (terms == 1) {
        Poly abs = c;
        if (c.lead() < 0) {
            negative = true;
            abs = -c;
        }
        if (abs == Poly(1)) return "";
        return abs.str() + "*";
    }
    return "(" + c.str() + ")*";
}
}  // namespace detail

inline std::string form_to_string(const LinearForm& f) {
    std::string out;
    for (int k = 0; k < 4; ++k) {
        if (f[k].is_zero()) continue;
        bool neg = false;
        std::string coeff = detail::coefficient_text(f[k], neg);
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        out += coeff + kVariables[k];
    }
    return out;
}

inline bool is_unit_variable(const LinearForm& f) {
    int nonzero = 0;
    bool unit = true;
    for (const auto& c : f) {
        if (c.is_zero()) continue;
        ++nonzero;
        unit = unit && c == Poly(1);
    }
    return nonzero == 1 && unit;
}

inline std::string to_equation(const ParamArrangement& a) {
    std::string out;
    for (const auto& f : a.forms) out += is_unit_variable(f) ? form_to_string(f) : "(" + form_to_string(f) + ")";
    return out;
}

inline std::string form_to_string(const ConstForm& f) {
    LinearForm p{Poly(f[0]), Poly(f[1]), Poly(f[2]), Poly(f[3])};
    return form_to_string(p);
}

inline std::string to_equation(const Arrangement& a) {
    ParamArrangement p;
    for (const auto& f : a.forms) p.forms.push_back({Poly(f[0]), Poly(f[1]), Poly(f[2]), Poly(f[3])});
    return to_equation(p);
}

inline Arrangement specialize(const ParamArrangement& a, const Rational& w0) {
    Arrangement out;
    for (std::size_t i = 0; i < a.forms.size(); ++i) {
        ConstForm f{a.forms[i][0](w0), a.forms[i][1](w0), a.forms[i][2](w0), a.forms[i][3](w0)};
        if (is_zero_form(f)) throw FormVanishes(i);
        out.forms.push_back(f);
    }
    return out;
}

inline ParamArrangement constant_family(const Arrangement& a) {
    ParamArrangement p;
    for (const auto& f : a.forms) p.forms.push_back({Poly(f[0]), Poly(f[1]), Poly(f[2]), Poly(f[3])});
    return p;
}

// Substituting x = M x' sends the row vector f to f M.
template <class T>
std::vector<FormOf<T>> change_coordinates(const std::vector<FormOf<T>>& forms, const Matrix<Rational>& m) {
    std::vector<FormOf<T>> out;
    for (const auto& f : forms) {
        FormOf<T> g{T(0), T(0), T(0), T(0)};
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i)
                if (m(i, j) != 0) g[j] = g[j] + f[i] * T(m(i, j));
        out.push_back(g);
    }
    return out;
}

template <class T>
Matrix<T> coefficient_matrix(const std::vector<FormOf<T>>& forms, const std::vector<int>& rows) {
    Matrix<T> m(rows.size(), 4);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = forms[rows[i]][j];
    return m;
}

}  // namespace octic
