#include "homalg/linalg.hpp"

#include <utility>

namespace homalg {

int exact_rank(const Matrix& m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (const auto& x : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
        for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
    }
    mpz_class prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

namespace {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(Matrix& a, size_t cols) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < a.size(); ++c) {
        size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        Scalar inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Scalar f = a[i][c];
            for (size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<std::vector<Scalar>> nullspace(const Matrix& m, size_t cols) {
    Matrix a = m;
    auto pivots = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(cols, 0);
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Scalar>> solve(const Matrix& m, const std::vector<Scalar>& b, size_t cols) {
    Matrix a = m;
    for (size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
    auto pivots = rref(a, cols + 1);
    std::vector<Scalar> x(cols, 0);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return std::nullopt;
        x[pivots[r]] = a[r][cols];
    }
    return x;
}

}  // namespace homalg
