#include "discocat/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace discocat {

namespace {

std::vector<std::size_t> inorder_dims(const LambekType& t, const SpaceAssignment& sa) {
    switch (t.kind()) {
        case LambekType::Kind::Basic:
            return {sa.dim_of(t.basic_name())};
        case LambekType::Kind::Unit:
            return {};
        default: {
            auto out = inorder_dims(t.lhs(), sa);
            auto rhs = inorder_dims(t.rhs(), sa);
            out.insert(out.end(), rhs.begin(), rhs.end());
            return out;
        }
    }
}

std::size_t count_axes(const LambekType& t) {
    switch (t.kind()) {
        case LambekType::Kind::Basic: return 1;
        case LambekType::Kind::Unit: return 0;
        default: return count_axes(t.lhs()) + count_axes(t.rhs());
    }
}

std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& p) {
    std::vector<std::size_t> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return inv;
}

}  // namespace

SpaceAssignment SpaceAssignment::standard(std::size_t noun_dim, std::size_t sentence_dim) {
    SpaceAssignment sa;
    sa.space_of = {{"n", "N"}, {"sigma", "N"}, {"s", "S"}, {"j", "S"}};
    sa.dimension = {{"N", noun_dim}, {"S", sentence_dim}};
    return sa;
}

SpaceAssignment SpaceAssignment::from_model(const VectorSpaceModel& model) {
    SpaceAssignment sa;
    sa.space_of = model.assignment;
    sa.dimension = model.spaces;
    return sa;
}

std::size_t SpaceAssignment::dim_of(const std::string& basic_name) const {
    auto it = space_of.find(basic_name);
    if (it == space_of.end())
        throw SemanticsError("basic type '" + basic_name + "' has no space assignment");
    auto dit = dimension.find(it->second);
    if (dit == dimension.end())
        throw SemanticsError("space '" + it->second + "' has no dimension");
    return dit->second;
}

const std::string& SpaceAssignment::label_of(const std::string& basic_name) const {
    auto it = space_of.find(basic_name);
    if (it == space_of.end())
        throw SemanticsError("basic type '" + basic_name + "' has no space assignment");
    return it->second;
}

std::vector<std::size_t> quantise_pregroup(const PregroupType& t, const SpaceAssignment& sa) {
    std::vector<std::size_t> shape;
    shape.reserve(t.factors.size());
    for (const auto& f : t.factors) shape.push_back(sa.dim_of(f.base.name));
    return shape;
}

std::vector<std::size_t> quantise_type(const LambekType& t, const SpaceAssignment& sa) {
    return quantise_pregroup(lambek_to_pregroup(t), sa);
}

std::vector<std::size_t> pregroup_axis_order(const LambekType& t) {
    switch (t.kind()) {
        case LambekType::Kind::Basic:
            return {0};
        case LambekType::Kind::Unit:
            return {};
        case LambekType::Kind::Product: {
            auto pa = pregroup_axis_order(t.lhs());
            auto pb = pregroup_axis_order(t.rhs());
            std::size_t na = pa.size();
            for (std::size_t x : pb) pa.push_back(na + x);
            return pa;
        }
        case LambekType::Kind::LeftImpl: {
            // a -o b stores the adjointed a-block reversed, then b.
            auto pa = pregroup_axis_order(t.lhs());
            auto pb = pregroup_axis_order(t.rhs());
            std::size_t na = pa.size();
            std::vector<std::size_t> out;
            out.reserve(na + pb.size());
            for (std::size_t x : pa) out.push_back(na - 1 - x);
            for (std::size_t x : pb) out.push_back(na + x);
            return out;
        }
        case LambekType::Kind::RightImpl: {
            // a o- b stores a, then the adjointed b-block reversed.
            auto pa = pregroup_axis_order(t.lhs());
            auto pb = pregroup_axis_order(t.rhs());
            std::size_t na = pa.size(), nb = pb.size();
            std::vector<std::size_t> out = pa;
            for (std::size_t x : pb) out.push_back(na + (nb - 1 - x));
            return out;
        }
    }
    throw SemanticsError("unreachable type kind");
}

// --- Plan serialization and execution ------------------------------------

std::string plan_to_json(const ContractionPlan& plan) {
    nlohmann::ordered_json j;
    j["input_shapes"] = plan.input_shapes;
    j["output_shape"] = plan.output_shape;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : plan.steps) {
        nlohmann::ordered_json js;
        switch (s.kind) {
            case PlanStep::Kind::LoadWord:
                js["op"] = "load_word";
                js["slot"] = s.slot;
                break;
            case PlanStep::Kind::TensorJoin:
                js["op"] = "tensor_join";
                break;
            case PlanStep::Kind::Contract:
                js["op"] = "contract";
                js["axis_i"] = s.axis_i;
                js["axis_j"] = s.axis_j;
                break;
            case PlanStep::Kind::ApplyMatrix:
                js["op"] = "apply_matrix";
                js["matrix"] = s.matrix;
                js["axis"] = s.axis;
                break;
            case PlanStep::Kind::LoadCap:
                js["op"] = "load_cap";
                js["dim"] = s.dim;
                break;
            case PlanStep::Kind::Transpose:
                js["op"] = "transpose";
                js["perm"] = s.perm;
                break;
        }
        j["steps"].push_back(js);
    }
    return j.dump();
}

Tensor execute_plan(const ContractionPlan& plan, const std::vector<Tensor>& words,
                    const std::map<std::string, Tensor>& matrices) {
    std::vector<Tensor> stack;
    for (const auto& s : plan.steps) {
        switch (s.kind) {
            case PlanStep::Kind::LoadWord: {
                if (s.slot >= words.size())
                    throw SemanticsError("plan refers to missing word slot " +
                                         std::to_string(s.slot));
                if (s.slot < plan.input_shapes.size() &&
                    words[s.slot].shape() != plan.input_shapes[s.slot])
                    throw SemanticsError("word tensor in slot " + std::to_string(s.slot) +
                                         " does not match the planned shape");
                stack.push_back(words[s.slot]);
                break;
            }
            case PlanStep::Kind::TensorJoin: {
                if (stack.size() < 2) throw SemanticsError("tensor_join on short stack");
                Tensor b = std::move(stack.back());
                stack.pop_back();
                Tensor a = std::move(stack.back());
                stack.pop_back();
                stack.push_back(tensor_product(a, b));
                break;
            }
            case PlanStep::Kind::Contract: {
                if (stack.empty()) throw SemanticsError("contract on empty stack");
                stack.back() = contract(stack.back(), s.axis_i, s.axis_j);
                break;
            }
            case PlanStep::Kind::ApplyMatrix: {
                if (stack.empty()) throw SemanticsError("apply_matrix on empty stack");
                auto it = matrices.find(s.matrix);
                if (it == matrices.end())
                    throw SemanticsError("unknown matrix '" + s.matrix + "' in plan");
                stack.back() = apply_matrix(stack.back(), s.axis, it->second);
                break;
            }
            case PlanStep::Kind::LoadCap:
                stack.push_back(Tensor::identity(s.dim));
                break;
            case PlanStep::Kind::Transpose: {
                if (stack.empty()) throw SemanticsError("transpose on empty stack");
                stack.back() = transpose(stack.back(), s.perm);
                break;
            }
        }
    }
    if (stack.empty()) return Tensor::scalar(1.0);  // empty program: the unit state
    if (stack.size() != 1) throw SemanticsError("plan left multiple tensors on the stack");
    if (stack.back().shape() != plan.output_shape)
        throw SemanticsError("plan produced an unexpected output shape");
    return std::move(stack.back());
}

// --- Wire graph ------------------------------------------------------------

namespace {

struct Endpoint {
    std::size_t slot = 0;
    std::size_t axis = 0;
    friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct ScheduleInput {
    std::vector<std::vector<std::size_t>> slot_shapes;
    std::vector<std::pair<Endpoint, Endpoint>> links;
    std::vector<std::pair<Endpoint, std::size_t>> residuals;  // word axis -> output pos
    // (output pos a, output pos b, dim)
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> caps;
    std::size_t output_rank = 0;
};

PlanStep make_step(PlanStep::Kind kind) {
    PlanStep s;
    s.kind = kind;
    return s;
}

PlanStep step_load_word(std::size_t slot) {
    PlanStep s = make_step(PlanStep::Kind::LoadWord);
    s.slot = slot;
    return s;
}

PlanStep step_contract(std::size_t i, std::size_t j) {
    PlanStep s = make_step(PlanStep::Kind::Contract);
    s.axis_i = i;
    s.axis_j = j;
    return s;
}

PlanStep step_load_cap(std::size_t dim) {
    PlanStep s = make_step(PlanStep::Kind::LoadCap);
    s.dim = dim;
    return s;
}

PlanStep step_transpose(std::vector<std::size_t> perm) {
    PlanStep s = make_step(PlanStep::Kind::Transpose);
    s.perm = std::move(perm);
    return s;
}

// Turns the link structure into a left-to-right stack program: join the
// word tensors in sentence order, contracting every link as soon as
// both of its endpoints are loaded.  This keeps intermediates no larger
// than the largest pair of adjacent open blocks.
ContractionPlan schedule(const ScheduleInput& in) {
    ContractionPlan plan;
    plan.input_shapes = in.slot_shapes;

    struct Axis {
        bool is_cap = false;
        Endpoint ep;              // word axis
        std::size_t cap_out = 0;  // output position owning this cap end
        std::size_t dim = 0;
    };

    auto links = in.links;
    for (auto& l : links)
        if (l.second < l.first) std::swap(l.first, l.second);
    std::sort(links.begin(), links.end(), [](const auto& a, const auto& b) {
        std::size_t ma = std::max(a.first.slot, a.second.slot);
        std::size_t mb = std::max(b.first.slot, b.second.slot);
        if (ma != mb) return ma < mb;
        return a < b;
    });

    std::vector<Axis> axes;
    std::vector<bool> done(links.size(), false);
    bool have_stack = false;

    auto position_of = [&](const Endpoint& ep) -> std::size_t {
        for (std::size_t p = 0; p < axes.size(); ++p)
            if (!axes[p].is_cap && axes[p].ep == ep) return p;
        throw SemanticsError("internal: lost track of a tensor axis");
    };

    for (std::size_t slot = 0; slot < in.slot_shapes.size(); ++slot) {
        plan.steps.push_back(step_load_word(slot));
        if (have_stack) plan.steps.push_back(make_step(PlanStep::Kind::TensorJoin));
        have_stack = true;
        for (std::size_t a = 0; a < in.slot_shapes[slot].size(); ++a)
            axes.push_back(Axis{false, {slot, a}, 0, in.slot_shapes[slot][a]});

        for (std::size_t li = 0; li < links.size(); ++li) {
            if (done[li]) continue;
            if (links[li].first.slot > slot || links[li].second.slot > slot) continue;
            std::size_t pi = position_of(links[li].first);
            std::size_t pj = position_of(links[li].second);
            if (pi > pj) std::swap(pi, pj);
            plan.steps.push_back(step_contract(pi, pj));
            axes.erase(axes.begin() + static_cast<std::ptrdiff_t>(pj));
            axes.erase(axes.begin() + static_cast<std::ptrdiff_t>(pi));
            done[li] = true;
        }
    }

    for (const auto& [out_a, out_b, dim] : in.caps) {
        plan.steps.push_back(step_load_cap(dim));
        if (have_stack) plan.steps.push_back(make_step(PlanStep::Kind::TensorJoin));
        have_stack = true;
        axes.push_back(Axis{true, {}, out_a, dim});
        axes.push_back(Axis{true, {}, out_b, dim});
    }

    if (axes.size() != in.output_rank)
        throw SemanticsError("internal: residual axes do not match the output arity");

    // Output positions of the surviving axes, in working order.
    std::vector<std::size_t> out_pos(axes.size());
    for (std::size_t p = 0; p < axes.size(); ++p) {
        if (axes[p].is_cap) {
            out_pos[p] = axes[p].cap_out;
        } else {
            bool found = false;
            for (const auto& [ep, pos] : in.residuals)
                if (ep == axes[p].ep) {
                    out_pos[p] = pos;
                    found = true;
                    break;
                }
            if (!found) throw SemanticsError("internal: dangling residual axis");
        }
    }
    std::vector<std::size_t> perm(axes.size());
    for (std::size_t p = 0; p < axes.size(); ++p) perm[out_pos[p]] = p;
    bool identity = true;
    for (std::size_t p = 0; p < perm.size(); ++p)
        if (perm[p] != p) identity = false;
    if (!identity)
        plan.steps.push_back(step_transpose(perm));

    plan.output_shape.assign(in.output_rank, 0);
    for (std::size_t p = 0; p < axes.size(); ++p) plan.output_shape[out_pos[p]] = axes[p].dim;
    return plan;
}

struct WirePool {
    std::vector<int> parent;
    std::vector<std::size_t> dims;

    int fresh(std::size_t dim) {
        parent.push_back(static_cast<int>(parent.size()));
        dims.push_back(dim);
        return static_cast<int>(parent.size()) - 1;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            throw SemanticsError("derivation wires a tensor axis to itself");
        if (dims[a] != dims[b])
            throw SemanticsError("shape mismatch across a contraction: " +
                                 std::to_string(dims[a]) + " vs " + std::to_string(dims[b]));
        parent[b] = a;
    }
};

std::vector<int> walk_derivation(const Derivation& d, std::vector<int> in, WirePool& pool,
                                 const SpaceAssignment& sa) {
    switch (d.kind()) {
        case Derivation::Kind::Id:
            return in;
        case Derivation::Kind::EvL: {
            std::size_t qa = count_axes(d.type_a());
            std::size_t qb = count_axes(d.type_b());
            if (in.size() != 2 * qa + qb)
                throw SemanticsError("evl wire arity mismatch in " + to_sexpr(d));
            for (std::size_t i = 0; i < qa; ++i) pool.unite(in[i], in[qa + i]);
            return std::vector<int>(in.begin() + static_cast<std::ptrdiff_t>(2 * qa), in.end());
        }
        case Derivation::Kind::EvR: {
            std::size_t qa = count_axes(d.type_a());
            std::size_t qb = count_axes(d.type_b());
            if (in.size() != qa + 2 * qb)
                throw SemanticsError("evr wire arity mismatch in " + to_sexpr(d));
            for (std::size_t i = 0; i < qb; ++i) pool.unite(in[qa + i], in[qa + qb + i]);
            return std::vector<int>(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(qa));
        }
        case Derivation::Kind::CurryL:
        case Derivation::Kind::NameL: {
            auto dims = inorder_dims(d.type_a(), sa);
            std::vector<int> fresh;
            fresh.reserve(dims.size());
            for (std::size_t dim : dims) fresh.push_back(pool.fresh(dim));
            std::vector<int> sub = fresh;
            sub.insert(sub.end(), in.begin(), in.end());
            auto out = walk_derivation(d.first(), std::move(sub), pool, sa);
            std::vector<int> result = fresh;
            result.insert(result.end(), out.begin(), out.end());
            return result;
        }
        case Derivation::Kind::CurryR:
        case Derivation::Kind::NameR: {
            auto dims = inorder_dims(d.type_b(), sa);
            std::vector<int> fresh;
            fresh.reserve(dims.size());
            for (std::size_t dim : dims) fresh.push_back(pool.fresh(dim));
            std::vector<int> sub = in;
            sub.insert(sub.end(), fresh.begin(), fresh.end());
            auto out = walk_derivation(d.first(), std::move(sub), pool, sa);
            out.insert(out.end(), fresh.begin(), fresh.end());
            return out;
        }
        case Derivation::Kind::Compose: {
            auto mid = walk_derivation(d.second(), std::move(in), pool, sa);
            return walk_derivation(d.first(), std::move(mid), pool, sa);
        }
        case Derivation::Kind::Par: {
            std::size_t split = count_axes(d.first().dom());
            if (in.size() < split) throw SemanticsError("par wire arity mismatch");
            std::vector<int> left(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(split));
            std::vector<int> right(in.begin() + static_cast<std::ptrdiff_t>(split), in.end());
            auto out = walk_derivation(d.first(), std::move(left), pool, sa);
            auto out2 = walk_derivation(d.second(), std::move(right), pool, sa);
            out.insert(out.end(), out2.begin(), out2.end());
            return out;
        }
    }
    throw SemanticsError("unreachable derivation kind");
}

}  // namespace

ContractionPlan compile_pregroup(const Reduction& r, const std::vector<PregroupType>& word_types,
                                 const SpaceAssignment& sa) {
    std::vector<std::size_t> boundary;  // flat index of each slot's first axis
    std::size_t total = 0;
    ScheduleInput in;
    for (const auto& wt : word_types) {
        boundary.push_back(total);
        total += wt.size();
        in.slot_shapes.push_back(quantise_pregroup(wt, sa));
    }
    std::vector<SimpleType> flat;
    for (const auto& wt : word_types)
        flat.insert(flat.end(), wt.factors.begin(), wt.factors.end());
    if (flat.size() != r.input.size() || !(flat == r.input))
        throw SemanticsError("reduction input does not align with the word types");

    auto locate = [&](std::size_t flat_idx) -> Endpoint {
        std::size_t slot = 0;
        while (slot + 1 < boundary.size() && boundary[slot + 1] <= flat_idx) slot++;
        return {slot, flat_idx - boundary[slot]};
    };

    for (auto [i, j] : r.links) {
        // Aliasing check: both ends must land in the same space.
        std::size_t di = sa.dim_of(r.input[i].base.name);
        std::size_t dj = sa.dim_of(r.input[j].base.name);
        if (di != dj)
            throw SemanticsError("link between '" + to_string(r.input[i]) + "' and '" +
                                 to_string(r.input[j]) + "' crosses spaces of dimension " +
                                 std::to_string(di) + " and " + std::to_string(dj));
        in.links.emplace_back(locate(i), locate(j));
    }
    for (std::size_t k = 0; k < r.residual_indices.size(); ++k)
        in.residuals.emplace_back(locate(r.residual_indices[k]), k);
    in.output_rank = r.residual_indices.size();
    return schedule(in);
}

ContractionPlan compile_lambek(const Derivation& d, const std::vector<LambekType>& word_types,
                               const SpaceAssignment& sa) {
    check(d);
    std::vector<LambekType> domain_factors = d.dom().factors();
    std::vector<LambekType> given;
    for (const auto& wt : word_types) {
        auto fs = wt.factors();
        given.insert(given.end(), fs.begin(), fs.end());
    }
    if (given.size() != domain_factors.size())
        throw SemanticsError("derivation domain does not match the word types");
    for (std::size_t i = 0; i < given.size(); ++i)
        if (!(given[i] == domain_factors[i]))
            throw SemanticsError("derivation domain does not match the word types");

    WirePool pool;
    ScheduleInput in;
    std::map<int, Endpoint> terminal;
    std::vector<int> wires;
    for (std::size_t slot = 0; slot < word_types.size(); ++slot) {
        auto dims = inorder_dims(word_types[slot], sa);
        auto order = pregroup_axis_order(word_types[slot]);
        in.slot_shapes.push_back(quantise_pregroup(lambek_to_pregroup(word_types[slot]), sa));
        for (std::size_t k = 0; k < dims.size(); ++k) {
            int w = pool.fresh(dims[k]);
            terminal[w] = Endpoint{slot, order[k]};
            wires.push_back(w);
        }
    }

    auto outs = walk_derivation(d, wires, pool, sa);
    in.output_rank = outs.size();

    // Gather the classes: word-axis terminals plus output anchors.
    std::map<int, std::vector<Endpoint>> class_terminals;
    std::map<int, std::vector<std::size_t>> class_anchors;
    for (const auto& [wire, ep] : terminal) class_terminals[pool.find(wire)].push_back(ep);
    for (std::size_t k = 0; k < outs.size(); ++k)
        class_anchors[pool.find(outs[k])].push_back(k);

    std::set<int> roots;
    for (const auto& [root, eps] : class_terminals) roots.insert(root);
    for (const auto& [root, ks] : class_anchors) roots.insert(root);
    for (int root : roots) {
        auto terms = class_terminals.count(root) ? class_terminals[root] : std::vector<Endpoint>{};
        auto anchors = class_anchors.count(root) ? class_anchors[root] : std::vector<std::size_t>{};
        if (terms.size() == 2 && anchors.empty()) {
            in.links.emplace_back(terms[0], terms[1]);
        } else if (terms.size() == 1 && anchors.size() == 1) {
            in.residuals.emplace_back(terms[0], anchors[0]);
        } else if (terms.empty() && anchors.size() == 2) {
            in.caps.emplace_back(anchors[0], anchors[1], pool.dims[root]);
        } else {
            throw SemanticsError("derivation produced an unwired tensor axis");
        }
    }
    return schedule(in);
}

Tensor name_tensor(const Tensor& m) {
    if (m.rank() != 2) throw SemanticsError("name_tensor expects a rank-2 matrix");
    return transpose(m, {1, 0});
}

Tensor name_tensor(const Tensor& m, const std::vector<std::size_t>& in_shape,
                   const std::vector<std::size_t>& out_shape) {
    Tensor flipped = name_tensor(m);
    std::size_t in_total = 1, out_total = 1;
    for (std::size_t d : in_shape) in_total *= d;
    for (std::size_t d : out_shape) out_total *= d;
    if (in_total != m.shape()[1] || out_total != m.shape()[0])
        throw SemanticsError("name_tensor: shapes do not factor the matrix");
    std::vector<std::size_t> shape = in_shape;
    shape.insert(shape.end(), out_shape.begin(), out_shape.end());
    return Tensor::from_data(std::move(shape), flipped.data());
}

// --- Word binding and sentence meanings -----------------------------------

namespace {

// Morphism words carry a map between implication spaces; the tensor is
// the (right or left) name of that map, laid out in storage order.  The
// monoidal path lifts the optional noun-space action; the compact path
// applies the map to the sentence space only.
Tensor morphism_tensor(const std::string& word, const LambekType& type,
                       const MorphismBinding& binding, Logic logic, const SpaceAssignment& sa) {
    if (!type.is_impl())
        throw SemanticsError("morphism word '" + word + "' must have an implication type");
    bool right = type.kind() == LambekType::Kind::RightImpl;
    LambekType result = right ? type.lhs() : type.rhs();
    LambekType arg = right ? type.rhs() : type.lhs();

    auto split_pair = [&](const LambekType& t) -> std::pair<std::size_t, std::size_t> {
        if (t.kind() != LambekType::Kind::LeftImpl || !t.lhs().is_basic() || !t.rhs().is_basic())
            throw SemanticsError("morphism word '" + word +
                                 "' needs (basic -o basic) implication operands");
        return {sa.dim_of(t.lhs().basic_name()), sa.dim_of(t.rhs().basic_name())};
    };
    auto [n_in, s_in] = split_pair(arg);
    auto [n_out, s_out] = split_pair(result);

    const Tensor& m = binding.s_matrix;
    if (m.shape() != std::vector<std::size_t>{s_out, s_in})
        throw SemanticsError("morphism word '" + word + "': s_matrix shape mismatch");
    Tensor p = Tensor::identity(n_in);
    if (logic == Logic::Lambek && binding.n_matrix) {
        p = *binding.n_matrix;
        if (p.shape() != std::vector<std::size_t>{n_out, n_in})
            throw SemanticsError("morphism word '" + word + "': n_matrix shape mismatch");
    } else if (n_out != n_in) {
        throw SemanticsError("morphism word '" + word + "': noun spaces differ and no n_matrix");
    }

    // Name of p (x) m in the in-order layout, then permute to storage.
    std::size_t rank = 4;
    std::vector<std::size_t> shape(rank);
    // in-order axes: result (n_out, s_out) and argument (n_in, s_in),
    // result first for o- types, argument first for -o types.
    std::vector<std::size_t> res_axes, arg_axes;
    if (right) {
        shape = {n_out, s_out, n_in, s_in};
        res_axes = {0, 1};
        arg_axes = {2, 3};
    } else {
        shape = {n_in, s_in, n_out, s_out};
        arg_axes = {0, 1};
        res_axes = {2, 3};
    }
    Tensor lambek_layout = Tensor::zeros(shape);
    std::vector<std::size_t> idx(rank, 0);
    for (std::size_t flat = 0; flat < lambek_layout.size(); ++flat) {
        std::size_t no = idx[res_axes[0]], so = idx[res_axes[1]];
        std::size_t ni = idx[arg_axes[0]], si = idx[arg_axes[1]];
        lambek_layout.data()[flat] =
            p.data()[no * n_in + ni] * m.data()[so * s_in + si];
        for (std::size_t k = rank; k-- > 0;) {
            if (++idx[k] < shape[k]) break;
            idx[k] = 0;
        }
    }
    return transpose(lambek_layout, inverse_perm(pregroup_axis_order(type)));
}

}  // namespace

std::size_t verb_arity(const LambekType& type, const SpaceAssignment& sa,
                       const std::vector<std::string>& designated) {
    std::set<std::string> sentence_labels;
    for (const auto& d : designated) sentence_labels.insert(sa.label_of(d));
    auto factors = lambek_to_pregroup(type).factors;
    std::size_t sentence_axes = 0;
    for (const auto& f : factors)
        if (sentence_labels.count(sa.label_of(f.base.name))) sentence_axes++;
    if (sentence_axes == 0) return 0;
    return factors.size() - sentence_axes;
}

Tensor bind_word(const std::string& word, const LambekType& type,
                 const VectorSpaceModel& model, Logic logic, const SpaceAssignment& sa,
                 const std::optional<std::string>& method,
                 const std::vector<std::string>& designated) {
    std::vector<std::size_t> expected = quantise_type(type, sa);

    if (auto it = model.morphisms.find(word); it != model.morphisms.end()) {
        Tensor t = morphism_tensor(word, type, it->second, logic, sa);
        if (t.shape() != expected)
            throw SemanticsError("morphism tensor for '" + word + "' has the wrong shape");
        return t;
    }
    if (method) {
        std::size_t arity = verb_arity(type, sa, designated);
        if (arity >= 1 && expected.size() >= 2) {
            auto it = model.verb_tensors.find({word, arity, *method});
            if (it == model.verb_tensors.end())
                throw SemanticsError("no " + *method + " tensor for verb '" + word +
                                     "' at arity " + std::to_string(arity));
            return embed_diagonal(it->second, expected);
        }
    }
    if (auto it = model.word_tensors.find(word); it != model.word_tensors.end()) {
        if (it->second.shape() != expected)
            throw SemanticsError("tensor for '" + word + "' has shape incompatible with type '" +
                                 to_string(type) + "'");
        return it->second;
    }
    if (auto it = model.word_vectors.find(word); it != model.word_vectors.end()) {
        if (it->second.shape() != expected)
            throw SemanticsError("vector for '" + word + "' has shape incompatible with type '" +
                                 to_string(type) + "'");
        return it->second;
    }
    throw SemanticsError("no tensor binding for word '" + word + "'");
}

MeaningResult meaning(const std::vector<std::string>& words, const Grammar& grammar,
                      const VectorSpaceModel& model, Logic logic,
                      const std::optional<std::string>& method) {
    auto parse = parse_sentence(words, grammar, logic);
    if (!parse)
        throw UngrammaticalError("sentence is not grammatical under the " + to_string(logic) +
                                 " logic");

    SpaceAssignment sa = SpaceAssignment::from_model(model);
    if (method) {
        // Per-arity sentence space: the k-ary verb model inhabits
        // S = N^k, with N read off the verb's argument factors.
        for (const auto& entry : parse->entries) {
            if (model.morphisms.count(entry.word)) continue;
            std::size_t arity = verb_arity(entry.type, sa, grammar.designated());
            if (arity < 1) continue;
            auto factors = lambek_to_pregroup(entry.type).factors;
            std::set<std::string> sentence_labels;
            for (const auto& d : grammar.designated()) sentence_labels.insert(sa.label_of(d));
            std::size_t s_dim = 1;
            for (const auto& f : factors)
                if (!sentence_labels.count(sa.label_of(f.base.name)))
                    s_dim *= sa.dim_of(f.base.name);
            sa.dimension[sa.label_of(parse->target.name)] = s_dim;
            break;
        }
    }

    std::vector<Tensor> tensors;
    std::vector<PregroupType> pregroup_types;
    std::vector<LambekType> lambek_types;
    for (const auto& entry : parse->entries) {
        tensors.push_back(
            bind_word(entry.word, entry.type, model, logic, sa, method, grammar.designated()));
        pregroup_types.push_back(lambek_to_pregroup(entry.type));
        lambek_types.push_back(entry.type);
    }

    ContractionPlan plan = logic == Logic::Pregroup
                               ? compile_pregroup(*parse->reduction, pregroup_types, sa)
                               : compile_lambek(*parse->derivation, lambek_types, sa);
    Tensor out = execute_plan(plan, tensors);
    return MeaningResult{std::move(out), std::move(*parse), std::move(plan), words};
}

}  // namespace discocat
