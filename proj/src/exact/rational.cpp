#include "saet/rational.hpp"

#include "saet/errors.hpp"

#include <cctype>

namespace saet {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::BadGlue: return "BadGlue";
    case ErrorKind::NotInClosure: return "NotInClosure";
    case ErrorKind::EmptyGerm: return "EmptyGerm";
    case ErrorKind::NotCommonFace: return "NotCommonFace";
    case ErrorKind::CertificationFailure: return "CertificationFailure";
    case ErrorKind::InPlane: return "InPlane";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::RecursionDepthExceeded: return "RecursionDepthExceeded";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ConflictFound: return "ConflictFound";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::NotEventuallyInDomain: return "NotEventuallyInDomain";
    case ErrorKind::PoleAtZero: return "PoleAtZero";
    case ErrorKind::LimitOutsideClosure: return "LimitOutsideClosure";
    case ErrorKind::GermInBadSet: return "GermInBadSet";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SameApex: return "SameApex";
    case ErrorKind::GermNotInTau: return "GermNotInTau";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionTooHigh: return "DimensionTooHigh";
    }
    return "Unknown";
}

Q parse_rational(std::string_view s) {
    std::string t(s);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    std::size_t i = 0;
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    t = t.substr(i);
    auto valid_int = [](const std::string& u) {
        if (u.empty()) return false;
        std::size_t k = (u[0] == '-' || u[0] == '+') ? 1 : 0;
        if (k == u.size()) return false;
        for (; k < u.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(u[k]))) return false;
        return true;
    };
    auto slash = t.find('/');
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num = num.substr(1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw Error(ErrorKind::ParseError, "bad rational '" + std::string(s) + "'");
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
    Q q(n, d);
    q.canonicalize();
    return q;
}

Q frac(long a, long b) {
    Q q(a, b);
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

Vec vsub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vadd(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vscale(const Vec& a, const Q& s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Q dot(const Vec& a, const Vec& b) {
    Q s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec zeros(std::size_t n) { return Vec(n, Q(0)); }

int sign(const Q& q) { return sgn(q); }

double to_double(const Q& q) { return q.get_d(); }

int rank(Mat m) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Q f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

bool solve(const Mat& a, const Vec& b, Vec& x) {
    int n = static_cast<int>(a.size());
    Mat m = a;
    for (int i = 0; i < n; ++i) m[i].push_back(b[i]);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) return false;
        std::swap(m[piv], m[c]);
        for (int i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Q f = m[i][c] / m[c][c];
            for (int j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    x.assign(n, Q(0));
    for (int i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
    return true;
}

bool invert(const Mat& a, Mat& inv) {
    int n = static_cast<int>(a.size());
    Mat m = a;
    for (int i = 0; i < n; ++i) {
        m[i].resize(2 * n, Q(0));
        m[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (m[i][c] != 0) { piv = i; break; }
        if (piv < 0) return false;
        std::swap(m[piv], m[c]);
        Q p = m[c][c];
        for (int j = 0; j < 2 * n; ++j) m[c][j] /= p;
        for (int i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Q f = m[i][c];
            for (int j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    inv.assign(n, Vec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return true;
}

Mat transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

Mat matmul(const Mat& a, const Mat& b) {
    std::size_t inner = b.size();
    std::size_t cols = inner ? b[0].size() : 0;
    Mat r(a.size(), Vec(cols, Q(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Vec matvec(const Mat& a, const Vec& x) {
    Vec r(a.size(), Q(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
    return r;
}

} // namespace saet
