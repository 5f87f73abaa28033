#include "homalg/koszul.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace homalg {

Permutation identity_permutation(int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

bool is_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
    Permutation c(a.size());
    for (size_t k = 0; k < b.size(); ++k) c[k] = a[b[k]];
    return c;
}

Permutation inverse(const Permutation& p) {
    Permutation q(p.size());
    for (size_t k = 0; k < p.size(); ++k) q[p[k]] = static_cast<int>(k);
    return q;
}

Permutation cycle_generator(int n) {
    Permutation p(n);
    for (int k = 0; k < n; ++k) p[k] = (k + 1) % n;
    return p;
}

Permutation reversal(int n) {
    Permutation p(n);
    for (int k = 0; k < n; ++k) p[k] = n - 1 - k;
    return p;
}

Permutation transposition(int n, int i, int j) {
    Permutation p = identity_permutation(n);
    std::swap(p[i], p[j]);
    return p;
}

int sgn(const Permutation& p) {
    long inv = 0;
    for (size_t a = 0; a < p.size(); ++a)
        for (size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b]) ++inv;
    return inv % 2 ? -1 : 1;
}

int koszul_sign(const Permutation& p, const std::vector<int>& degrees) {
    if (p.size() != degrees.size()) throw std::invalid_argument("koszul_sign: size mismatch");
    long e = 0;
    for (size_t a = 0; a < p.size(); ++a)
        for (size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b]) e += static_cast<long>(degrees[a]) * degrees[b];
    return e % 2 ? -1 : 1;
}

std::vector<int> permute_degrees(const Permutation& p, const std::vector<int>& degrees) {
    std::vector<int> out(degrees.size());
    for (size_t k = 0; k < p.size(); ++k) out[p[k]] = degrees[k];
    return out;
}

std::vector<Permutation> all_permutations(int n) {
    std::vector<Permutation> out;
    Permutation p = identity_permutation(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Permutation> cyclic_group(int n) {
    std::vector<Permutation> out;
    Permutation g = cycle_generator(n);
    Permutation p = identity_permutation(n);
    for (int k = 0; k < n; ++k) {
        out.push_back(p);
        p = compose(g, p);
    }
    return out;
}

std::vector<Permutation> adjacent_transpositions(int n) {
    std::vector<Permutation> out;
    for (int k = 0; k + 1 < n; ++k) out.push_back(transposition(n, k, k + 1));
    return out;
}

std::vector<Permutation> shuffles(int i, int j) {
    std::vector<Permutation> out;
    int n = i + j;
    // choose the image set of the first block
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + i, true);
    std::vector<std::vector<bool>> masks;
    do {
        masks.push_back(mask);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    for (const auto& m : masks) {
        Permutation p(n);
        int a = 0, b = i;
        for (int pos = 0; pos < n; ++pos) {
            if (m[pos]) p[a++] = pos;
            else p[b++] = pos;
        }
        out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Permutation> unshuffles(int i, int j) {
    std::vector<Permutation> out;
    for (const auto& p : shuffles(i, j)) out.push_back(inverse(p));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> compositions(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k <= 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    if (n < k) return out;
    if (k == 1) return {{n}};
    for (int first = 1; first <= n - (k - 1); ++first)
        for (auto rest : compositions(n - first, k - 1)) {
            rest.insert(rest.begin(), first);
            out.push_back(std::move(rest));
        }
    return out;
}

std::vector<std::vector<int>> all_compositions(int n) {
    std::vector<std::vector<int>> out;
    for (int k = 1; k <= n; ++k)
        for (auto& c : compositions(n, k)) out.push_back(std::move(c));
    return out;
}

Permutation pair_lift(const Permutation& sigma) {
    Permutation p(2 * sigma.size());
    for (size_t k = 0; k < sigma.size(); ++k) {
        p[2 * k] = 2 * sigma[k];
        p[2 * k + 1] = 2 * sigma[k] + 1;
    }
    return p;
}

namespace signs {

namespace {
long sum(const std::vector<int>& v, size_t from, size_t to) {
    long s = 0;
    for (size_t k = from; k < to && k < v.size(); ++k) s += v[k];
    return s;
}
}  // namespace

long delta(const std::vector<int>& l) {
    long k = static_cast<long>(l.size());
    long e = k * (k - 1) / 2;
    for (long j = 1; j <= k; ++j) e += (k - j) * l[j - 1];
    return e;
}

long eta(int i, int k, const std::vector<int>& r, int j) {
    long p = static_cast<long>(r.size());
    long inner = p;
    for (long t = 2; t <= p; ++t) inner += r[t - 1] - 1;
    long e = i + inner * k;
    for (long t = 2; t <= j; ++t) e += r[t - 1] - 1;
    for (long t = 2; t <= p; ++t) e += static_cast<long>(r[t - 1] - 1) * (p - t);
    return e;
}

long alpha(int p, int q, int l, int k, const std::vector<int>& is, const std::vector<int>& js) {
    long e = static_cast<long>(p + q) * (p + q + 1) / 2 + static_cast<long>(q) * (l + k);
    for (int t = 1; t <= q; ++t) e += static_cast<long>(q - t) * js[t - 1];
    for (int t = 1; t <= p; ++t) e += static_cast<long>(p + q + 1 - t) * is[t - 1];
    return e;
}

long beta1(int l, int k, int m, int n, const std::vector<int>& is, const std::vector<int>& js) {
    long p = static_cast<long>(is.size()), q = static_cast<long>(js.size());
    long e = l + static_cast<long>(k) * (m + n - l);
    for (long t = 1; t <= p; ++t) e += is[t - 1] - 1;
    for (long t = 1; t <= p; ++t) e += (is[t - 1] - 1) * (p + q - t);
    for (long t = 1; t <= q; ++t) e += (js[t - 1] - 1) * (q - t);
    return e;
}

long beta2(int l, int k, int m, int n, int v, int r, int t, const std::vector<int>& is, const std::vector<int>& js) {
    long p = static_cast<long>(is.size()), q = static_cast<long>(js.size());
    long e = l + static_cast<long>(k) * (m + n - l) + static_cast<long>(r + t) * q;
    for (long s = 1; s <= v; ++s) e += is[s - 1] - 1;
    for (long s = 1; s <= p; ++s) e += (is[s - 1] - 1) * (p + q + 1 - t);
    for (long s = 1; s <= q; ++s) e += (js[s - 1] - 1) * (q - t);
    return e;
}

long beta3(int l, int k, int m, int n, int v, int r, int t, const std::vector<int>& is, const std::vector<int>& js) {
    long p = static_cast<long>(is.size()), q = static_cast<long>(js.size());
    long e = l + static_cast<long>(k) * (m + n - l) + static_cast<long>(r + t) * (q - 1);
    for (long s = 1; s <= p; ++s) e += is[s - 1] - 1;
    for (long s = 1; s <= v; ++s) e += js[s - 1] - 1;
    for (long s = 1; s <= p; ++s) e += (is[s - 1] - 1) * (p + q + 1 - t);
    for (long s = 1; s <= q; ++s) e += (js[s - 1] - 1) * (q - t);
    return e;
}

long dual_module(int i, int j, long sum_a, int f, int x, long sum_b) {
    return static_cast<long>(j + 1) * (i + j + 1) + sum_a * (f + x + sum_b) + static_cast<long>(f) * (i + j - 1);
}

long dual_module_rb(int i, int j, long sum_a, int f, int x, long sum_b) {
    return static_cast<long>(j + 1) * (i + j + 1) + sum_a * (f + x + sum_b) + static_cast<long>(f) * (i + j);
}

long xi(int j, int n, int f, const std::vector<int>& a) {
    return static_cast<long>(j) * n + static_cast<long>(n - 1) * f + sum(a, 0, j - 1) * (f + sum(a, j, a.size()));
}

long theta(const std::vector<int>& a, const std::vector<int>& b, int f, int m, int n) {
    long sa = sum(a, 0, a.size()), sb = sum(b, 0, b.size());
    return sa * sb + static_cast<long>(f) * (sa + m + n + 1) + static_cast<long>(m + n + 1) * (n + 1);
}

long gamma(const std::vector<int>& b, const std::vector<int>& f) {
    long n = static_cast<long>(f.size());
    long e = 0;
    for (long k = 1; k <= n; ++k) e += (n - k + 1) * b[k - 1] + (n - k) * f[k - 1];
    return e;
}

namespace {
long bf(const std::vector<int>& b, const std::vector<int>& f, int upto) {
    long e = 0;
    for (int k = 1; k <= upto; ++k) e += b[k - 1] + f[k - 1];
    return e;
}
}  // namespace

long gamma1(int p, int j, const std::vector<int>& b, const std::vector<int>& f) {
    long e = p + bf(b, f, p);
    for (int k = p + 1; k <= p + j; ++k) e += static_cast<long>(p + j - k + 1) * b[k - 1] + static_cast<long>(p + j - k) * f[k - 1];
    return e;
}

long gamma2(int p, int j, const std::vector<int>& b, const std::vector<int>& f) {
    long e = p + bf(b, f, p + 1);
    for (int k = p + 2; k <= p + j + 1; ++k) e += static_cast<long>(p + j - k + 1) * b[k - 1];
    for (int k = p + 1; k <= p + j; ++k) e += static_cast<long>(p + j - k) * f[k - 1];
    return e;
}

long gamma3(int i, int n, const std::vector<int>& b, const std::vector<int>& f) {
    long e = i + bf(b, f, i);
    for (int k = i + 1; k <= n; ++k) e += static_cast<long>(n - k + 1) * b[k - 1] + static_cast<long>(n - k) * f[k - 1];
    return e;
}

long gamma4(int p, int i, int j, int n, const std::vector<int>& b, const std::vector<int>& f) {
    long e = p + static_cast<long>(j - 1) * (i - p) + static_cast<long>(j - 1) * bf(b, f, p);
    for (int k = 1; k <= p + j; ++k) e += static_cast<long>(n - k + 1) * b[k - 1] + static_cast<long>(n - k) * f[k - 1];
    return e;
}

long gamma5(int s, int i, int j, int n, const std::vector<int>& b, const std::vector<int>& f) {
    long e = s + static_cast<long>(j - 1) * (i - s - 1) + static_cast<long>(j - 1) * bf(b, f, s);
    for (int k = 1; k <= s + j; ++k) e += static_cast<long>(n - k + 1) * b[k - 1] + static_cast<long>(n - k) * f[k - 1];
    return e;
}

long gamma6(int i, int j, int n, const std::vector<int>& b, const std::vector<int>& f) {
    long e = i + 1 + static_cast<long>(j - 1) * bf(b, f, i);
    for (int k = i + 1; k <= n; ++k) e += static_cast<long>(n - k + 1) * b[k - 1] + static_cast<long>(n - k) * f[k - 1];
    return e;
}

long extraction(const std::vector<int>& a, const std::vector<int>& f) {
    long n = static_cast<long>(a.size());
    long e = static_cast<long>(a[n - 1]) * f[0] + (n + 1) * (a[n - 1] + f[0]);
    for (long j = 1; j <= n; ++j) e += (n - j) * a[j - 1] + (j - 1) * f[j - 1];
    for (long i = 1; i <= n; ++i)
        for (long j = i + 1; j < n; ++j) e += static_cast<long>(a[i - 1]) * a[j - 1];
    for (long i = 2; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j) e += static_cast<long>(f[i - 1]) * f[j - 1];
    for (long i = 2; i <= n; ++i)
        for (long j = i; j < n; ++j) e += static_cast<long>(f[i - 1]) * a[j - 1];
    return e;
}

}  // namespace signs

}  // namespace homalg
