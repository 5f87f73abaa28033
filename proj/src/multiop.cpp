#include "homalg/multiop.hpp"

#include <sstream>

namespace homalg {

void add_term(TensorVec& v, const Key& k, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = v.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

void add_scaled(TensorVec& v, const TensorVec& w, const Scalar& c) {
    if (c == 0) return;
    for (const auto& [k, x] : w) add_term(v, k, x * c);
}

TensorVec scaled(const TensorVec& w, const Scalar& c) {
    TensorVec out;
    add_scaled(out, w, c);
    return out;
}

int tensor_degree(const std::vector<SpacePtr>& slots, const Key& k) {
    int d = 0;
    for (size_t i = 0; i < k.size(); ++i) d += slots[i]->degree(k[i]);
    return d;
}

std::vector<int> slot_degrees(const std::vector<SpacePtr>& slots, const Key& k) {
    std::vector<int> d(k.size());
    for (size_t i = 0; i < k.size(); ++i) d[i] = slots[i]->degree(k[i]);
    return d;
}

std::string format_key(const std::vector<SpacePtr>& slots, const Key& k) {
    std::string s;
    for (size_t i = 0; i < k.size(); ++i) {
        if (i) s += " (x) ";
        s += slots[i]->label(k[i]);
    }
    return s.empty() ? "1" : s;
}

MultilinearOp::MultilinearOp(std::string name, std::vector<SpacePtr> domain, std::vector<SpacePtr> codomain, int degree)
    : name_(std::move(name)), domain_(std::move(domain)), codomain_(std::move(codomain)), degree_(degree) {}

int MultilinearOp::input_degree(const Key& in) const { return tensor_degree(domain_, in); }
int MultilinearOp::output_degree(const Key& out) const { return tensor_degree(codomain_, out); }

void MultilinearOp::add(const Key& in, const Key& out, const Scalar& c) {
    if (c == 0) return;
    if (in.size() != domain_.size() || out.size() != codomain_.size())
        throw StructureError("operation '" + name_ + "': wrong tuple length");
    for (size_t i = 0; i < in.size(); ++i)
        if (in[i] < 0 || static_cast<size_t>(in[i]) >= domain_[i]->dim())
            throw StructureError("operation '" + name_ + "': input index out of range");
    for (size_t i = 0; i < out.size(); ++i)
        if (out[i] < 0 || static_cast<size_t>(out[i]) >= codomain_[i]->dim())
            throw StructureError("operation '" + name_ + "': output index out of range");
    if (output_degree(out) != input_degree(in) + degree_) {
        std::ostringstream msg;
        msg << "operation '" << name_ << "' of degree " << degree_ << " maps " << format_key(domain_, in)
            << " (degree " << input_degree(in) << ") to " << format_key(codomain_, out) << " (degree "
            << output_degree(out) << ")";
        throw DegreeError(msg.str());
    }
    auto& row = table_[in];
    add_term(row, out, c);
    if (row.empty()) table_.erase(in);
}

void MultilinearOp::add_tensor(const Key& in, const TensorVec& out, const Scalar& c) {
    for (const auto& [k, x] : out) add(in, k, x * c);
}

void MultilinearOp::set(const Key& in, const Key& out, const Scalar& c) {
    Scalar old = coefficient(in, out);
    add(in, out, c - old);
}

const TensorVec* MultilinearOp::lookup(const Key& in) const {
    auto it = table_.find(in);
    return it == table_.end() ? nullptr : &it->second;
}

Scalar MultilinearOp::coefficient(const Key& in, const Key& out) const {
    const TensorVec* row = lookup(in);
    if (!row) return 0;
    auto it = row->find(out);
    return it == row->end() ? Scalar(0) : it->second;
}

TensorVec MultilinearOp::apply(const TensorVec& in) const {
    TensorVec out;
    for (const auto& [k, c] : in)
        if (const TensorVec* row = lookup(k)) add_scaled(out, *row, c);
    return out;
}

bool MultilinearOp::same_signature(const MultilinearOp& o) const {
    if (degree_ != o.degree_ || domain_.size() != o.domain_.size() || codomain_.size() != o.codomain_.size()) return false;
    for (size_t i = 0; i < domain_.size(); ++i)
        if (!same_space(domain_[i], o.domain_[i])) return false;
    for (size_t i = 0; i < codomain_.size(); ++i)
        if (!same_space(codomain_[i], o.codomain_[i])) return false;
    return true;
}

bool MultilinearOp::operator==(const MultilinearOp& o) const { return same_signature(o) && table_ == o.table_; }

Layer identity_layer(const SpacePtr& s, int count) { return Layer(static_cast<size_t>(count), Factor::identity(s)); }

Layer concat(std::initializer_list<Layer> parts) {
    Layer out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<SpacePtr> layer_domain(const Layer& layer) {
    std::vector<SpacePtr> d;
    for (const auto& f : layer) {
        if (f.op) d.insert(d.end(), f.op->domain().begin(), f.op->domain().end());
        else d.push_back(f.id);
    }
    return d;
}

std::vector<SpacePtr> layer_codomain(const Layer& layer) {
    std::vector<SpacePtr> d;
    for (const auto& f : layer) {
        if (f.op) d.insert(d.end(), f.op->codomain().begin(), f.op->codomain().end());
        else d.push_back(f.id);
    }
    return d;
}

TensorVec apply_layer(const Layer& layer, const Key& in, const std::vector<int>& in_degrees) {
    std::vector<std::pair<Key, Scalar>> partial{{Key{}, Scalar(1)}};
    size_t pos = 0;
    long before = 0;
    int sign = 1;
    for (const auto& f : layer) {
        size_t a = static_cast<size_t>(f.arity());
        if (pos + a > in.size()) throw StructureError("layer arity exceeds input length");
        if (f.op) {
            Key sub(in.begin() + pos, in.begin() + pos + a);
            const TensorVec* val = f.op->lookup(sub);
            if (!val) return {};
            if ((static_cast<long>(f.op->degree()) * before) % 2) sign = -sign;
            std::vector<std::pair<Key, Scalar>> next;
            next.reserve(partial.size() * val->size());
            for (const auto& [k, c] : partial)
                for (const auto& [o, x] : *val) {
                    Key nk = k;
                    nk.insert(nk.end(), o.begin(), o.end());
                    next.emplace_back(std::move(nk), c * x);
                }
            partial = std::move(next);
        } else {
            for (auto& [k, c] : partial) k.push_back(in[pos]);
        }
        for (size_t t = pos; t < pos + a; ++t) before += in_degrees[t];
        pos += a;
    }
    if (pos != in.size()) throw StructureError("layer arity does not match input length");
    TensorVec out;
    for (auto& [k, c] : partial) add_term(out, k, sign == 1 ? c : Scalar(-c));
    return out;
}

TensorVec apply_layer(const Layer& layer, const TensorVec& in, const std::vector<SpacePtr>& in_slots) {
    TensorVec out;
    for (const auto& [k, c] : in) add_scaled(out, apply_layer(layer, k, slot_degrees(in_slots, k)), c);
    return out;
}

TensorVec apply_layers(const std::vector<Layer>& layers, const Key& in, const std::vector<SpacePtr>& in_slots) {
    TensorVec cur{{in, Scalar(1)}};
    std::vector<SpacePtr> slots = in_slots;
    for (const auto& layer : layers) {
        cur = apply_layer(layer, cur, slots);
        if (cur.empty()) return cur;
        slots = layer_codomain(layer);
    }
    return cur;
}

size_t key_count(const std::vector<SpacePtr>& slots) {
    size_t n = 1;
    for (const auto& s : slots) n *= s->dim();
    return n;
}

Key key_at(const std::vector<SpacePtr>& slots, size_t index) {
    Key k(slots.size());
    for (size_t i = slots.size(); i-- > 0;) {
        size_t d = slots[i]->dim();
        k[i] = static_cast<int>(index % d);
        index /= d;
    }
    return k;
}

std::vector<Key> all_keys(const std::vector<SpacePtr>& slots) {
    std::vector<Key> out;
    size_t n = key_count(slots);
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(key_at(slots, i));
    return out;
}

MultilinearOp insert_compose(const MultilinearOp& outer, const MultilinearOp& inner, int position, long sign_exponent) {
    int q = static_cast<int>(inner.codomain().size());
    if (position < 0 || position + q > outer.arity())
        throw StructureError("insert_compose: position out of range");
    for (int t = 0; t < q; ++t)
        if (!same_space(inner.codomain()[t], outer.domain()[position + t]))
            throw StructureError("insert_compose: codomain of '" + inner.name() + "' does not match slot " +
                                 std::to_string(position + t) + " of '" + outer.name() + "'");
    std::vector<SpacePtr> prefix(outer.domain().begin(), outer.domain().begin() + position);
    std::vector<SpacePtr> suffix(outer.domain().begin() + position + q, outer.domain().end());
    std::vector<SpacePtr> dom = prefix;
    dom.insert(dom.end(), inner.domain().begin(), inner.domain().end());
    dom.insert(dom.end(), suffix.begin(), suffix.end());
    MultilinearOp out(outer.name() + "o_" + std::to_string(position) + inner.name(), dom, outer.codomain(),
                      outer.degree() + inner.degree());
    Layer first;
    for (const auto& s : prefix) first.push_back(Factor::identity(s));
    first.push_back(Factor::of(inner));
    for (const auto& s : suffix) first.push_back(Factor::identity(s));
    std::vector<Layer> layers{first, Layer{Factor::of(outer)}};
    Scalar global = parity_sign(sign_exponent);
    for (const auto& pk : all_keys(prefix))
        for (const auto& [ik, _] : inner.table())
            for (const auto& sk : all_keys(suffix)) {
                Key in = pk;
                in.insert(in.end(), ik.begin(), ik.end());
                in.insert(in.end(), sk.begin(), sk.end());
                TensorVec v = apply_layers(layers, in, dom);
                out.add_tensor(in, v, global);
            }
    return out;
}

MultilinearOp permute_inputs(const MultilinearOp& op, const Permutation& sigma) {
    if (static_cast<int>(sigma.size()) != op.arity() || !is_permutation(sigma))
        throw StructureError("permute_inputs: bad permutation");
    std::vector<SpacePtr> dom(sigma.size());
    for (size_t j = 0; j < sigma.size(); ++j) dom[j] = op.domain()[sigma[j]];
    MultilinearOp out(op.name(), dom, op.codomain(), op.degree());
    for (const auto& [y, val] : op.table()) {
        Key x(y.size());
        for (size_t j = 0; j < y.size(); ++j) x[j] = y[sigma[j]];
        int s = koszul_sign(sigma, slot_degrees(dom, x));
        out.add_tensor(x, val, s);
    }
    return out;
}

TensorVec permute_tensor(const TensorVec& v, const std::vector<SpacePtr>& slots, const Permutation& sigma) {
    TensorVec out;
    for (const auto& [k, c] : v) {
        Key nk(k.size());
        for (size_t i = 0; i < k.size(); ++i) nk[sigma[i]] = k[i];
        int s = koszul_sign(sigma, slot_degrees(slots, k));
        add_term(out, nk, s == 1 ? c : Scalar(-c));
    }
    return out;
}

MultilinearOp permute_outputs(const MultilinearOp& op, const Permutation& sigma) {
    if (sigma.size() != op.codomain().size() || !is_permutation(sigma))
        throw StructureError("permute_outputs: bad permutation");
    std::vector<SpacePtr> cod(sigma.size());
    for (size_t k = 0; k < sigma.size(); ++k) cod[sigma[k]] = op.codomain()[k];
    MultilinearOp out(op.name(), op.domain(), cod, op.degree());
    for (const auto& [x, val] : op.table()) out.add_tensor(x, permute_tensor(val, op.codomain(), sigma));
    return out;
}

MultilinearOp conjugate(const MultilinearOp& op, const Permutation& sigma) {
    return permute_outputs(permute_inputs(op, inverse(sigma)), sigma);
}

MultilinearOp sum_ops(const std::vector<std::pair<Scalar, const MultilinearOp*>>& terms, std::string name) {
    if (terms.empty()) throw StructureError("sum_ops: no terms");
    const MultilinearOp& first = *terms.front().second;
    MultilinearOp out(std::move(name), first.domain(), first.codomain(), first.degree());
    for (const auto& [c, op] : terms) {
        if (!op->same_signature(first)) throw StructureError("sum_ops: signature mismatch for '" + op->name() + "'");
        for (const auto& [k, v] : op->table()) out.add_tensor(k, v, c);
    }
    return out;
}

}  // namespace homalg
