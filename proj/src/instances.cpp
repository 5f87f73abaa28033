#include "homalg/instances.hpp"

namespace homalg::instances {

namespace {

MultilinearOp op(const std::string& name, const SpacePtr& a, int arity, int degree) {
    return MultilinearOp(name, std::vector<SpacePtr>(static_cast<size_t>(arity), a), {a}, degree);
}

}  // namespace

AInfStructure dual_numbers() {
    auto a = make_space("A", {{"1", 0}, {"x", 0}});
    auto m2 = op("m2", a, 2, 0);
    m2.add({0, 0}, {0}, 1);
    m2.add({0, 1}, {1}, 1);
    m2.add({1, 0}, {1}, 1);
    return make_ainf(a, {m2});
}

AInfStructure graded_dual_numbers() {
    // basis index = 2*(xi power) + (x power)
    auto a = make_space("A", {{"1", 0}, {"x", 0}, {"xi", 1}, {"x.xi", 1}});
    auto m2 = op("m2", a, 2, 0);
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) {
            int xu = u % 2, xv = v % 2, eu = u / 2, ev = v / 2;
            if (xu + xv > 1 || eu + ev > 1) continue;
            // x is even, so only xi passing xi could give a sign, and xi^2 = 0
            m2.add({u, v}, {(xu + xv) + 2 * (eu + ev)}, 1);
        }
    return make_ainf(a, {m2});
}

AInfStructure acyclic_dg() {
    auto a = make_space("A", {{"1", 0}, {"e", 1}, {"f", 0}});
    auto m1 = op("m1", a, 1, -1);
    m1.add({1}, {2}, 1);
    auto m2 = op("m2", a, 2, 0);
    for (int v = 0; v < 3; ++v) {
        m2.add({0, v}, {v}, 1);
        if (v) m2.add({v, 0}, {v}, 1);
    }
    return make_ainf(a, {m1, m2});
}

AInfStructure m3_toy() {
    auto a = make_space("A", {{"x", 0}, {"y", 1}});
    auto m3 = op("m3", a, 3, 1);
    m3.add({0, 0, 0}, {1}, 1);
    return make_ainf(a, {m3});
}

AInfStructure matrix_algebra(int n, const std::vector<int>& degrees) {
    std::vector<int> deg = degrees.empty() ? std::vector<int>(n, 0) : degrees;
    std::vector<BasisElement> basis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            basis.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1), deg[i] - deg[j]});
    auto a = make_space("End", basis);
    auto m2 = op("m2", a, 2, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) m2.add({i * n + j, j * n + k}, {i * n + k}, 1);
    return make_ainf(a, {m2});
}

RBAbsolute classical_rb_dual_numbers() {
    RBAbsolute r{dual_numbers(), {}};
    auto t = op("T1", r.algebra.space, 1, 0);
    t.add({0}, {1}, 1);
    r.T.ops[1] = t;
    return r;
}

RBAbsolute graded_toy_rb() {
    auto a = make_space("A", {{"1", 0}, {"x", 0}, {"y", 1}});
    auto m2 = op("m2", a, 2, 0);
    for (int v = 0; v < 3; ++v) {
        m2.add({0, v}, {v}, 1);
        if (v) m2.add({v, 0}, {v}, 1);
    }
    RBAbsolute r{make_ainf(a, {m2}), {}};
    auto t1 = op("T1", a, 1, 0);
    t1.add({0}, {1}, 1);
    auto t2 = op("T2", a, 2, 1);
    t2.add({0, 0}, {2}, 1);
    r.T.ops[1] = t1;
    r.T.ops[2] = t2;
    return r;
}

RBAbsolute graded_classical_rb() {
    RBAbsolute r{graded_dual_numbers(), {}};
    auto t = op("T1", r.algebra.space, 1, 0);
    t.add({0}, {1}, 1);
    t.add({2}, {3}, 1);
    r.T.ops[1] = t;
    return r;
}

CyclicForm trace_form(const AInfStructure& end_algebra) {
    const SpacePtr& a = end_algebra.space;
    int n = 0;
    while (n * n < static_cast<int>(a->dim())) ++n;
    std::map<std::pair<int, int>, Scalar> g;
    // tr(E_ij E_kl) = [j == k][i == l]
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[{i * n + j, j * n + i}] = 1;
    return make_form(a, 0, g);
}

}  // namespace homalg::instances
