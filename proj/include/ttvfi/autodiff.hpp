#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "ttvfi/errors.hpp"
#include "ttvfi/tensor.hpp"

namespace ttvfi {
namespace ad {

struct Node {
    Tensor val;
    Tensor grad;  // allocated on demand during backward
    bool requires_grad = false;
    bool is_param = false;
    std::vector<std::shared_ptr<Node>> parents;
    // Reads this->grad and accumulates into the parents' grads.
    std::function<void(Node&)> backfn;
    std::uint64_t visit_mark = 0;

    Tensor& ensure_grad() {
        if (!grad.defined()) grad = Tensor(val.dims());
        return grad;
    }
};

inline bool& grad_mode() {
    thread_local bool on = true;
    return on;
}

struct NoGradGuard {
    bool prev;
    NoGradGuard() : prev(grad_mode()) { grad_mode() = false; }
    ~NoGradGuard() { grad_mode() = prev; }
};

}  // namespace ad

// Handle to a node in the (implicit) computation graph. Copies share the node.
class Value {
public:
    Value() = default;

    static Value leaf(Tensor v, bool requires_grad = false) {
        Value r;
        r.n_ = std::make_shared<ad::Node>();
        r.n_->val = std::move(v);
        r.n_->requires_grad = requires_grad;
        return r;
    }

    static Value param(Tensor v) {
        Value r = leaf(std::move(v), true);
        r.n_->is_param = true;
        return r;
    }

    static Value constant(Tensor v) { return leaf(std::move(v), false); }

    bool defined() const { return n_ != nullptr; }
    const Tensor& val() const { return n_->val; }
    Tensor& val_mut() { return n_->val; }
    bool requires_grad() const { return n_ && n_->requires_grad; }
    Tensor& grad() { return n_->ensure_grad(); }
    const Tensor& grad_view() const { return n_->grad; }
    bool has_grad() const { return n_ && n_->grad.defined(); }

    void zero_grad() {
        if (n_ && n_->grad.defined()) n_->grad.fill(0.0);
    }

    std::shared_ptr<ad::Node> node() const { return n_; }

    // Reverse-mode sweep from this node. `seed` defaults to all-ones (the
    // usual scalar-loss case).
    void backward(const Tensor* seed = nullptr) const {
        check_arg(n_ != nullptr, "backward on undefined Value");
        std::vector<ad::Node*> order;
        topo_order(order);
        Tensor& g = n_->ensure_grad();
        if (seed) {
            check_arg(seed->same_shape(n_->val), "backward: seed shape mismatch");
            for (std::int64_t i = 0; i < g.size(); ++i) g[i] += (*seed)[i];
        } else {
            for (std::int64_t i = 0; i < g.size(); ++i) g[i] += 1.0;
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            ad::Node* nd = *it;
            if (nd->backfn && nd->grad.defined()) nd->backfn(*nd);
        }
    }

private:
    void topo_order(std::vector<ad::Node*>& order) const {
        static std::uint64_t epoch = 0;
        std::uint64_t mark = ++epoch;
        // Iterative post-order DFS.
        std::vector<std::pair<ad::Node*, std::size_t>> stack;
        if (n_->visit_mark != mark) {
            n_->visit_mark = mark;
            stack.emplace_back(n_.get(), 0);
        }
        while (!stack.empty()) {
            auto& [nd, idx] = stack.back();
            if (idx < nd->parents.size()) {
                ad::Node* p = nd->parents[idx++].get();
                if (p->visit_mark != mark && p->requires_grad) {
                    p->visit_mark = mark;
                    stack.emplace_back(p, 0);
                }
            } else {
                order.push_back(nd);
                stack.pop_back();
            }
        }
    }

    std::shared_ptr<ad::Node> n_;
};

// Builds an op node. When grad mode is off or no parent needs gradients the
// node is detached (no parents retained, no backward closure).
inline Value make_op(Tensor out, std::vector<Value> parents, std::function<void(ad::Node&)> backfn) {
    bool need = false;
    if (ad::grad_mode()) {
        for (const Value& p : parents)
            if (p.defined() && p.requires_grad()) need = true;
    }
    Value r = Value::leaf(std::move(out), need);
    if (need) {
        auto n = r.node();
        n->parents.reserve(parents.size());
        for (const Value& p : parents)
            if (p.defined()) n->parents.push_back(p.node());
        n->backfn = std::move(backfn);
    }
    return r;
}

}  // namespace ttvfi
