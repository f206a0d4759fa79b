#include "permsum/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "permsum/error.hpp"

namespace permsum {

Complex unit_phase(double theta) {
    const double quarter = theta / (kPi / 2.0);
    const double nearest = std::nearbyint(quarter);
    if (std::abs(quarter - nearest) < 1e-15 * std::max(1.0, std::abs(quarter))) {
        switch (static_cast<long long>(std::fmod(std::fmod(nearest, 4.0) + 4.0, 4.0))) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    return std::polar(1.0, theta);
}

double wrap_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r -= kTwoPi;
    }
    return r;
}

ComplexMatrix::ComplexMatrix(std::size_t order) : order_(order), data_(order * order) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : order_(rows.size()), data_() {
    data_.reserve(order_ * order_);
    for (const auto& r : rows) {
        if (r.size() != order_) {
            throw DomainError("ComplexMatrix: rows must have length " + std::to_string(order_));
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t order) {
    ComplexMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::principal(std::span<const std::size_t> indices) const {
    ComplexMatrix out(indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = 0; b < indices.size(); ++b) {
            out(a, b) = (*this)(indices[a], indices[b]);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::minor(std::size_t row, std::size_t col) const {
    ComplexMatrix out(order_ - 1);
    for (std::size_t i = 0, oi = 0; i < order_; ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, oj = 0; j < order_; ++j) {
            if (j == col) continue;
            out(oi, oj++) = (*this)(i, j);
        }
        ++oi;
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(order_);
    for (std::size_t i = 0; i < order_; ++i) {
        for (std::size_t j = 0; j < order_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::shifted(Complex value) const {
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < order_; ++i) {
        out(i, i) += value;
    }
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.order() != b.order()) {
        throw DomainError("matrix product: order mismatch");
    }
    const std::size_t n = a.order();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& a) {
    ComplexMatrix out(a.order());
    for (std::size_t i = 0; i < a.order(); ++i) {
        for (std::size_t j = 0; j < a.order(); ++j) {
            out(i, j) = scalar * a(i, j);
        }
    }
    return out;
}

double infinity_norm(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.order(); ++i) {
        double s = 0.0;
        for (const Complex& z : m.row(i)) s += std::abs(z);
        best = std::max(best, s);
    }
    return best;
}

double one_norm(const ComplexMatrix& m) { return infinity_norm(m.transpose()); }

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

double parse_real(std::string_view s, std::string_view token) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DomainError("malformed complex token '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Complex parse_complex_token(std::string_view token) {
    if (token.empty()) {
        throw DomainError("empty complex token");
    }
    std::string_view t = token;
    if (t.front() == '+') t.remove_prefix(1);
    if (t.back() != 'j' && t.back() != 'i') {
        return {parse_real(t, token), 0.0};
    }
    t.remove_suffix(1);
    // The split point is the last sign that is not the leading sign and does not
    // belong to an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        return {0.0, parse_real(t, token)};
    }
    std::string_view re = t.substr(0, split);
    std::string_view im = t.substr(split);
    if (im.front() == '+') im.remove_prefix(1);
    return {parse_real(re, token), parse_real(im, token)};
}

std::string format_complex_token(Complex z) {
    std::string out = format_double(z.real());
    const double im = z.imag();
    if (!std::signbit(im)) out += '+';
    out += format_double(im);
    out += 'j';
    return out;
}

ComplexMatrix parse_dense_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long n = -1;
    if (!(in >> n) || n < 0) {
        throw DomainError("dense matrix: first token must be a non-negative order");
    }
    ComplexMatrix m(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m.order(); ++i) {
        for (std::size_t j = 0; j < m.order(); ++j) {
            std::string token;
            if (!(in >> token)) {
                throw DomainError("dense matrix: expected " + std::to_string(n * n) + " entries");
            }
            m(i, j) = parse_complex_token(token);
        }
    }
    std::string extra;
    if (in >> extra) {
        throw DomainError("dense matrix: trailing token '" + extra + "'");
    }
    return m;
}

std::string format_dense_matrix(const ComplexMatrix& m) {
    std::string out = std::to_string(m.order()) + "\n";
    for (std::size_t i = 0; i < m.order(); ++i) {
        for (std::size_t j = 0; j < m.order(); ++j) {
            if (j > 0) out += ' ';
            out += format_complex_token(m(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace permsum
