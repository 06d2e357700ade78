#include "bithresh/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bithresh {

void validate_permutation(const std::vector<int>& pi, int n) {
    if (static_cast<int>(pi.size()) != n) {
        throw std::invalid_argument("permutation: wrong length");
    }
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int v : pi) {
        if (v < 0 || v >= n || seen[static_cast<size_t>(v)]) {
            throw std::invalid_argument("permutation: not a permutation of the vertex set");
        }
        seen[static_cast<size_t>(v)] = 1;
    }
}

System::System(Graph graph, std::vector<int> kup, std::vector<int> kdown, UpdateScheme scheme)
    : graph_(std::move(graph)), kup_(std::move(kup)), kdown_(std::move(kdown)),
      scheme_(std::move(scheme)) {
    int n = graph_.vertex_count();
    if (n > 64) throw std::invalid_argument("System: at most 64 vertices supported");
    if (static_cast<int>(kup_.size()) != n || static_cast<int>(kdown_.size()) != n) {
        throw std::invalid_argument("System: threshold maps must cover exactly the vertex set");
    }
    for (int v = 0; v < n; ++v) {
        int hi = graph_.degree(v) + 2;
        if (kup_[static_cast<size_t>(v)] < 0 || kup_[static_cast<size_t>(v)] > hi ||
            kdown_[static_cast<size_t>(v)] < 0 || kdown_[static_cast<size_t>(v)] > hi) {
            throw std::invalid_argument("System: threshold at vertex " + std::to_string(v + 1) +
                                        " outside [0, d(v)+2]");
        }
    }
    if (scheme_.mode == UpdateMode::Sequential) {
        validate_permutation(scheme_.pi, n);
    } else if (!scheme_.pi.empty()) {
        throw std::invalid_argument("System: synchronous scheme must not carry a permutation");
    }
    mask_.resize(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        StateCode m = StateCode{1} << v;
        for (int u : graph_.neighbors(v)) m |= StateCode{1} << u;
        mask_[static_cast<size_t>(v)] = m;
    }
}

System System::uniform(Graph graph, int kup, int kdown, UpdateScheme scheme) {
    size_t n = static_cast<size_t>(graph.vertex_count());
    return System(std::move(graph), std::vector<int>(n, kup), std::vector<int>(n, kdown),
                  std::move(scheme));
}

System System::kdown_deg_plus_one(Graph graph, int kup, UpdateScheme scheme) {
    size_t n = static_cast<size_t>(graph.vertex_count());
    std::vector<int> kdown(n);
    for (size_t v = 0; v < n; ++v) kdown[v] = graph.degree(static_cast<int>(v)) + 1;
    return System(std::move(graph), std::vector<int>(n, kup), std::move(kdown), std::move(scheme));
}

int System::sigma(StateCode x, int v) const {
    return std::popcount(x & mask_[static_cast<size_t>(v)]);
}

int System::eval_vertex(StateCode x, int v) const {
    int s = sigma(x, v);
    return state_bit(x, v) ? (s >= kdown(v)) : (s >= kup(v));
}

StateCode System::local_function(StateCode x, int v) const {
    return with_bit(x, v, eval_vertex(x, v));
}

StateCode System::step_synchronous(StateCode x) const {
    StateCode y = 0;
    for (int v = 0; v < vertex_count(); ++v) {
        if (eval_vertex(x, v)) y |= StateCode{1} << v;
    }
    return y;
}

StateCode System::step_sequential(StateCode x, const std::vector<int>& pi) const {
    validate_permutation(pi, vertex_count());
    StateCode cur = x;
    for (int v : pi) cur = local_function(cur, v);
    return cur;
}

StateCode System::step(StateCode x) const {
    if (scheme_.mode == UpdateMode::Synchronous) return step_synchronous(x);
    StateCode cur = x;
    for (int v : scheme_.pi) cur = local_function(cur, v);
    return cur;
}

WeightedSystem::WeightedSystem(int n, std::vector<Rat> a_row_major, std::vector<Rat> kup,
                               std::vector<Rat> kdown, bool allow_asymmetric)
    : n_(n), a_(std::move(a_row_major)), kup_(std::move(kup)), kdown_(std::move(kdown)) {
    if (n_ < 1 || n_ > 64) throw std::invalid_argument("WeightedSystem: n must be in [1, 64]");
    if (a_.size() != static_cast<size_t>(n_) * n_ ||
        kup_.size() != static_cast<size_t>(n_) || kdown_.size() != static_cast<size_t>(n_)) {
        throw std::invalid_argument("WeightedSystem: dimension mismatch");
    }
    symmetric_ = true;
    for (int i = 0; i < n_ && symmetric_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (a(i, j) != a(j, i)) {
                symmetric_ = false;
                break;
            }
        }
    }
    if (!symmetric_ && !allow_asymmetric) {
        throw std::invalid_argument("WeightedSystem: matrix is not symmetric "
                                    "(pass allow_asymmetric to experiment anyway)");
    }
    all_integer_ = std::all_of(a_.begin(), a_.end(), [](const Rat& r) { return is_integer(r); }) &&
                   std::all_of(kup_.begin(), kup_.end(), [](const Rat& r) { return is_integer(r); }) &&
                   std::all_of(kdown_.begin(), kdown_.end(), [](const Rat& r) { return is_integer(r); });
    if (all_integer_) {
        ai_.reserve(a_.size());
        for (const Rat& r : a_) ai_.push_back(r.numerator());
        kupi_.reserve(kup_.size());
        for (const Rat& r : kup_) kupi_.push_back(r.numerator());
        kdowni_.reserve(kdown_.size());
        for (const Rat& r : kdown_) kdowni_.push_back(r.numerator());
    }
}

WeightedSystem WeightedSystem::from_graph(const System& sys) {
    int n = sys.vertex_count();
    std::vector<Rat> a(static_cast<size_t>(n) * n, Rat(0));
    for (int i = 0; i < n; ++i) {
        a[static_cast<size_t>(i) * n + i] = Rat(1);
        for (int j : sys.graph().neighbors(i)) a[static_cast<size_t>(i) * n + j] = Rat(1);
    }
    std::vector<Rat> kup, kdown;
    for (int v = 0; v < n; ++v) {
        kup.push_back(Rat(sys.kup(v)));
        kdown.push_back(Rat(sys.kdown(v)));
    }
    return WeightedSystem(n, std::move(a), std::move(kup), std::move(kdown));
}

Rat WeightedSystem::row_sum(StateCode x, int i) const {
    Rat s(0);
    const Rat* row = &a_[static_cast<size_t>(i) * n_];
    for (int j = 0; j < n_; ++j) {
        if (state_bit(x, j)) s += row[j];
    }
    return s;
}

int WeightedSystem::eval_index(StateCode x, int i) const {
    if (all_integer_) {
        long long s = 0;
        const long long* row = &ai_[static_cast<size_t>(i) * n_];
        for (int j = 0; j < n_; ++j) {
            if (state_bit(x, j)) s += row[j];
        }
        return state_bit(x, i) ? (s >= kdowni_[static_cast<size_t>(i)])
                               : (s >= kupi_[static_cast<size_t>(i)]);
    }
    Rat s = row_sum(x, i);
    return state_bit(x, i) ? (s >= kdown(i)) : (s >= kup(i));
}

StateCode WeightedSystem::step(StateCode x) const {
    StateCode y = 0;
    for (int i = 0; i < n_; ++i) {
        if (eval_index(x, i)) y |= StateCode{1} << i;
    }
    return y;
}

} // namespace bithresh
