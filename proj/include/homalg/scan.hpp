#pragma once

#include "homalg/multiop.hpp"
#include "homalg/report.hpp"

#include <functional>

namespace homalg {

using KeyFilter = std::function<bool(const Key&)>;
using KeyEval = std::function<TensorVec(const Key&)>;

/// Evaluates an identity on every basis tuple of in_slots accepted by the filter and
/// records each nonzero output coefficient as a residual.
std::vector<Residual> scan_identity(const std::string& identity, const std::string& indices,
                                    const std::vector<SpacePtr>& in_slots, const std::vector<SpacePtr>& out_slots,
                                    const KeyFilter& filter, const KeyEval& eval);

/// Scalar-valued variant: the residual output is the ground field.
std::vector<Residual> scan_scalar_identity(const std::string& identity, const std::string& indices,
                                           const std::vector<SpacePtr>& in_slots, const KeyFilter& filter,
                                           const std::function<Scalar(const Key&)>& eval);

std::vector<std::string> key_labels(const std::vector<SpacePtr>& slots, const Key& k);

/// Direct sum with component bookkeeping.
struct SumSpace {
    SpacePtr space;
    std::vector<SpacePtr> parts;
    std::vector<int> offsets;

    SumSpace() = default;
    SumSpace(const std::string& name, std::vector<SpacePtr> parts);
    int component(int index) const;
    int local(int index) const { return index - offsets[component(index)]; }
    int global(int part, int local_index) const { return offsets[part] + local_index; }
    /// Number of slots of k that lie in the given component.
    int count(const Key& k, int part) const;
};

/// Adds src into target after mapping each input slot t and output slot u to the
/// given components of the sums.
void embed_into(MultilinearOp& target, const MultilinearOp& src, const SumSpace& in_sum,
                const std::vector<int>& in_parts, const SumSpace& out_sum, const std::vector<int>& out_parts,
                const Scalar& scale = 1);

}  // namespace homalg
