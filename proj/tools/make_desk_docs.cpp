// Regenerates the desk documents under data/ from the built-in instances.
#include "homalg/commands.hpp"
#include "homalg/instances.hpp"

#include <fstream>
#include <iostream>

using namespace homalg;
using namespace homalg::instances;

namespace {

std::string dir = "data";

void save(const std::string& file, const Document& doc) {
    std::ofstream(dir + "/" + file, std::ios::binary) << print_document(doc);
    std::cout << "wrote " << dir << "/" << file << "\n";
}

void save_text(const std::string& file, const std::string& text) {
    std::ofstream(dir + "/" + file, std::ios::binary) << text;
    std::cout << "wrote " << dir << "/" << file << "\n";
}

const std::map<std::string, int> kCutoffs = {{"max_arity", 4}, {"max_word", 3}};

TensorFamily aguiar() {
    TensorFamily r{matrix_algebra(2), {}};
    r.r[2] = {{{0, 1}, Scalar(1)}, {{1, 0}, Scalar(-1)}};
    return r;
}

SpacePtr plane() { return make_space("V", {{"v1", 0}, {"v2", 0}}); }

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) dir = argv[1];

    {
        DocumentWriter w;
        w.rb_absolute("rb", classical_rb_dual_numbers());
        Document doc = w.finish(kCutoffs);
        save("dual_numbers_rb.json", doc);

        // T(x) = 1 instead of 0
        RBAbsolute bad = classical_rb_dual_numbers();
        bad.T.ops[1].set({1}, {0}, 1);
        DocumentWriter wb;
        wb.rb_absolute("rb", bad);
        save("dual_numbers_rb_perturbed.json", wb.finish(kCutoffs));

        std::string text = print_document(doc);
        auto at = text.find("\"coeff\": \"1\"");
        save_text("bad_rational.json", text.replace(at, 12, "\"coeff\": \"1/0\""));
    }
    {
        AInfStructure a = dual_numbers();
        a.m.ops[2].set({0, 1}, {1}, 2);  // 1 * x = 2x breaks associativity
        DocumentWriter w;
        w.ainf("algebra", a);
        save("dual_numbers_assoc_perturbed.json", w.finish(kCutoffs));
    }
    {
        DocumentWriter w;
        w.rb_module("module", regular_rb_module(classical_rb_dual_numbers()));
        save("dual_numbers_rb_module.json", w.finish(kCutoffs));
    }
    {
        DocumentWriter w;
        w.rb_absolute("rb", graded_toy_rb());
        save("graded_toy_rb.json", w.finish(kCutoffs));
    }
    {
        DocumentWriter w;
        w.tensors("r", aguiar(), plane());
        save("aguiar.json", w.finish(kCutoffs));

        TensorFamily lop{matrix_algebra(2), {}};
        lop.r[2] = {{{0, 1}, Scalar(1)}};
        DocumentWriter wn;
        wn.tensors("r", lop, plane());
        save("aguiar_not_skew.json", wn.finish(kCutoffs));

        DocumentWriter wz;
        wz.tensors("r", TensorFamily{matrix_algebra(2), {}}, plane());
        save("zero_tensor.json", wz.finish(kCutoffs));
    }
    {
        InteractivePair p = endomorphism_pair(dual_numbers());
        OperatorSearch s = find_cyclic_rb_derivation(p, 3);
        if (!s.found) {
            std::cerr << "no cyclic Rota-Baxter derivation found\n";
            return 1;
        }
        OpFamily t;
        t.ops[1] = *s.found;
        DocumentWriter w;
        w.derivation("zero", p, OpFamily{});
        w.derivation("derivation", p, t);
        save("end_dual_numbers.json", w.finish(kCutoffs));
    }
    return 0;
}
