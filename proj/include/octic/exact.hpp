#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace octic {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ZeroPolynomial : MathError {
    ZeroPolynomial() : MathError("ZeroPolynomial: polynomial is zero") {}
};

struct BothZero : MathError {
    BothZero() : MathError("BothZero: gcd of two zero polynomials") {}
};

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer d(s.substr(slash + 1));
    if (d == 0) throw MathError("zero denominator in " + s);
    return Rational(Integer(s.substr(0, slash)), d);
}

// Univariate polynomial over Q in the parameter w, coefficients ascending.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c) { if (c != 0) coeffs_.push_back(c); }
    Poly(int c) : Poly(Rational(c)) {}
    explicit Poly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

    static Poly monomial(const Rational& c, std::size_t deg) {
        std::vector<Rational> v(deg + 1);
        v[deg] = c;
        return Poly(std::move(v));
    }
    static Poly w() { return monomial(1, 1); }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational lead() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        Poly r = *this;
        Rational l = lead();
        for (auto& c : r.coeffs_) c /= l;
        return r;
    }

    Poly derivative() const {
        std::vector<Rational> v;
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(coeffs_[i] * static_cast<int>(i));
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(v));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    // Euclidean division; throws on division by zero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw MathError("polynomial division by zero");
        std::vector<Rational> rem = a.coeffs_;
        if (a.degree() < b.degree()) return {Poly{}, a};
        std::vector<Rational> q(a.coeffs_.size() - b.coeffs_.size() + 1);
        const Rational bl = b.lead();
        for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
            Rational f = rem[i + b.degree()] / bl;
            q[i] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[i + j] -= f * b.coeffs_[j];
        }
        return {Poly(std::move(q)), Poly(std::move(rem))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    std::string str(const std::string& var = "w") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Rational& c = coeffs_[i];
            if (c == 0) continue;
            bool neg = c < 0;
            Rational a = neg ? Rational(-c) : c;
            if (out.empty()) out += neg ? "-" : "";
            else out += neg ? " - " : " + ";
            std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
            if (mono.empty()) out += to_string(a);
            else if (a == 1) out += mono;
            else out += to_string(a) + "*" + mono;
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

inline Poly poly_gcd(Poly a, Poly b) {
    if (a.is_zero() && b.is_zero()) throw BothZero();
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Primitive integer multiple of p with positive leading coefficient.
inline std::vector<Integer> primitive_integer_form(const Poly& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) l = boost::multiprecision::lcm(l, denominator(c));
    std::vector<Integer> v;
    Integer g = 0;
    for (const auto& c : p.coeffs()) {
        v.push_back(numerator(c) * (l / denominator(c)));
        g = boost::multiprecision::gcd(g, v.back());
    }
    if (g == 0) return v;
    if (v.back() < 0) g = -g;
    for (auto& x : v) x /= g;
    return v;
}

struct RootFactorization {
    std::vector<std::pair<Rational, int>> roots;  // ascending by root value
    std::vector<Poly> residual;                   // monic, square-free, pairwise coprime, no rational root
    Rational leading;
};

namespace detail {
inline std::vector<Integer> divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace detail

// Rational roots with multiplicities. The residual is the part of p without
// rational roots, split into square-free pairwise-coprime factors by
// multiplicity; it is not tested for irreducibility.
inline RootFactorization rational_roots(const Poly& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    RootFactorization out;
    out.leading = p.lead();
    Poly rest = p.monic();

    int zero_mult = 0;
    while (rest.degree() > 0 && rest.coeff(0) == 0) {
        rest = rest / Poly::w();
        ++zero_mult;
    }
    if (zero_mult) out.roots.emplace_back(Rational(0), zero_mult);

    if (rest.degree() > 0) {
        auto ints = primitive_integer_form(rest);
        std::vector<Rational> candidates;
        for (const auto& a : detail::divisors(ints.front()))
            for (const auto& b : detail::divisors(ints.back())) {
                candidates.emplace_back(a, b);
                candidates.emplace_back(-a, b);
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& r : candidates) {
            int mult = 0;
            Poly lin(std::vector<Rational>{-r, 1});
            while (rest.degree() > 0 && rest(r) == 0) {
                rest = rest / lin;
                ++mult;
            }
            if (mult) out.roots.emplace_back(r, mult);
        }
    }
    std::sort(out.roots.begin(), out.roots.end());

    // Yun's square-free decomposition of what remains.
    if (rest.degree() > 0) {
        Poly a = rest;
        Poly b = a.derivative();
        Poly c = poly_gcd(a, b);
        Poly d = a / c;
        Poly e = b / c - d.derivative();
        while (d.degree() > 0) {
            Poly f = poly_gcd(d, e);
            if (f.degree() > 0) out.residual.push_back(f);
            d = d / f;
            e = e / f - d.derivative();
        }
    }
    return out;
}

// Q(w): coprime numerator/denominator with monic denominator.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(const Rational& c) : num_(c), den_(1) {}
    RationalFunction(int c) : RationalFunction(Rational(c)) {}
    RationalFunction(const Poly& p) : num_(p), den_(1) {}
    RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a) { return {-a.num_, a.den_}; }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw MathError("rational function division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const {
        if (den_.is_constant()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw MathError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        Poly g = poly_gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
        Rational l = den_.lead();
        num_ = num_ * Poly(Rational(1) / l);
        den_ = den_.monic();
    }
    Poly num_;
    Poly den_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }
inline bool is_zero(const Poly& p) { return p.is_zero(); }

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& r : init) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols_if_empty = 0) {
        Matrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero(v[j])) out[i] = out[i] + (*this)(i, j) * v[j];
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (is_zero(a(i, k))) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + a(i, k) * b(k, j);
            }
        return c;
    }

    bool is_zero_matrix() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return is_zero(x); });
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
struct RrefResult {
    Matrix<T> reduced;
    std::size_t rank = 0;
    std::vector<std::vector<T>> kernel;
    std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination pivoting on the first nonzero entry, columns left
// to right. Kernel vectors have a 1 in one free column and zeros in the others.
template <class T>
RrefResult<T> rref(Matrix<T> m) {
    RrefResult<T> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : out.pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (std::size_t i = 0; i < out.pivots.size(); ++i) v[out.pivots[i]] = -m(i, f);
        out.kernel.push_back(std::move(v));
    }
    out.reduced = std::move(m);
    return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
    return rref(m).rank;
}

// Determinant by fraction-free cofactor expansion; fine for the 4x4 sizes used here.
template <class T>
T determinant(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return T(1);
    if (n == 1) return m(0, 0);
    T acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (is_zero(m(0, j))) continue;
        Matrix<T> minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, kk = 0; k < n; ++k) {
                if (k == j) continue;
                minor(i - 1, kk++) = m(i, k);
            }
        T term = m(0, j) * determinant(minor);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

// All index subsets of {0..n-1} of size k, lexicographic.
inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

// Monic gcd of all k x k minors of m (zero polynomial if every minor vanishes).
inline Poly minor_gcd(const Matrix<Poly>& m, std::size_t k) {
    Poly g;
    for (const auto& rs : subsets(static_cast<int>(m.rows()), static_cast<int>(k)))
        for (const auto& cs : subsets(static_cast<int>(m.cols()), static_cast<int>(k))) {
            Matrix<Poly> sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
            Poly d = determinant(sub);
            if (d.is_zero()) continue;
            g = g.is_zero() ? d.monic() : poly_gcd(g, d);
            if (g.degree() == 0) return g;
        }
    return g;
}

}  // namespace octic
