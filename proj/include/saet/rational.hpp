#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace saet {

using Q = mpq_class;
using Vec = std::vector<Q>;
using Mat = std::vector<Vec>; // row-major

// Canonical a/b (mpq_class(a, b) alone does not reduce).
Q frac(long a, long b);

// Accepts "p/q", "p" and decimal-free integers; result is canonicalized.
Q parse_rational(std::string_view s);
std::string to_string(const Q& q);

Vec vsub(const Vec& a, const Vec& b);
Vec vadd(const Vec& a, const Vec& b);
Vec vscale(const Vec& a, const Q& s);
Q dot(const Vec& a, const Vec& b);
inline Q norm2(const Vec& a) { return dot(a, a); }
Vec zeros(std::size_t n);

int sign(const Q& q);
double to_double(const Q& q);

// Gaussian elimination helpers over Q.
int rank(Mat m);
// Solves the square system A x = b; returns false if A is singular.
bool solve(const Mat& a, const Vec& b, Vec& x);
bool invert(const Mat& a, Mat& inv);
Mat transpose(const Mat& a);
Mat matmul(const Mat& a, const Mat& b);
Vec matvec(const Mat& a, const Vec& x);

} // namespace saet
