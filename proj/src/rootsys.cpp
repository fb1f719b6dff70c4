#include "todatopo/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <sstream>

namespace todatopo {

namespace {

// Height first, then lex on coefficients; positives sort after negatives
// under plain height order, so positivity is handled by the caller.
bool root_less(const RootVec& a, const RootVec& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a < b;
}

std::vector<std::vector<int>> cartan_matrix(char type, int l) {
    std::vector<std::vector<int>> C(l, std::vector<int>(l, 0));
    for (int i = 0; i < l; ++i) C[i][i] = 2;
    auto bond = [&](int i, int j, int cij, int cji) {
        C[i][j] = cij;
        C[j][i] = cji;
    };
    auto chain = [&](int upto) {
        for (int i = 0; i + 1 < upto; ++i) bond(i, i + 1, -1, -1);
    };
    switch (type) {
        case 'A':
            if (l < 1) throw UnsupportedType("type A requires rank >= 1");
            chain(l);
            break;
        case 'B':
            if (l < 2) throw UnsupportedType("type B requires rank >= 2");
            chain(l - 1);
            bond(l - 2, l - 1, -2, -1);  // alpha_l short
            break;
        case 'C':
            if (l < 2) throw UnsupportedType("type C requires rank >= 2");
            chain(l - 1);
            bond(l - 2, l - 1, -1, -2);  // alpha_l long
            break;
        case 'D':
            if (l < 3) throw UnsupportedType("type D requires rank >= 3");
            chain(l - 1);
            bond(l - 3, l - 1, -1, -1);
            break;
        case 'E':
            if (l < 6 || l > 8) throw UnsupportedType("type E requires rank 6, 7 or 8");
            // Bourbaki: chain 1-3-4-5-...-l, node 2 attached to 4.
            bond(0, 2, -1, -1);
            bond(1, 3, -1, -1);
            for (int i = 2; i + 1 < l; ++i) bond(i, i + 1, -1, -1);
            break;
        case 'F':
            if (l != 4) throw UnsupportedType("type F requires rank 4");
            chain(4);
            bond(1, 2, -2, -1);  // alpha_3, alpha_4 short
            break;
        case 'G':
            if (l != 2) throw UnsupportedType("type G requires rank 2");
            bond(0, 1, -1, -3);  // alpha_2 short
            break;
        default:
            throw UnsupportedType(std::string("unknown type label '") + type + "'");
    }
    return C;
}

}  // namespace

RootSystem RootSystem::build(char type_label, int rank, const Config& cfg) {
    type_label = static_cast<char>(std::toupper(static_cast<unsigned char>(type_label)));
    if (rank < 1) throw UnsupportedType("rank must be positive");
    if (rank > cfg.rank_cap)
        throw RankCapExceeded("rank " + std::to_string(rank) + " exceeds cap " +
                              std::to_string(cfg.rank_cap));
    RootSystem rs;
    rs.type_ = type_label;
    rs.rank_ = rank;
    rs.cartan_ = cartan_matrix(type_label, rank);
    rs.close_roots();
    return rs;
}

RootSystem RootSystem::parse(std::string_view name, const Config& cfg) {
    if (name.size() < 2) throw UnsupportedType("bad type name '" + std::string(name) + "'");
    char type = name[0];
    int rank = 0;
    for (std::size_t k = 1; k < name.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(name[k])))
            throw UnsupportedType("bad type name '" + std::string(name) + "'");
        rank = rank * 10 + (name[k] - '0');
    }
    return build(type, rank, cfg);
}

void RootSystem::close_roots() {
    const int l = rank_;
    // Closure of the simple roots under all simple reflections gives the
    // whole (finite) root set.
    auto reflect_vec = [&](int i, const RootVec& v) {
        int pairing = 0;
        for (int j = 0; j < l; ++j) pairing += v[j] * cartan_[j][i];
        RootVec w = v;
        w[i] -= pairing;
        return w;
    };

    std::vector<RootVec> found;
    std::map<RootVec, int> seen;
    std::queue<RootVec> todo;
    for (int i = 0; i < l; ++i) {
        RootVec e(l, 0);
        e[i] = 1;
        seen.emplace(e, 0);
        found.push_back(e);
        todo.push(e);
    }
    while (!todo.empty()) {
        RootVec v = todo.front();
        todo.pop();
        for (int i = 0; i < l; ++i) {
            RootVec w = reflect_vec(i, v);
            if (seen.emplace(w, 0).second) {
                found.push_back(w);
                todo.push(w);
            }
        }
    }

    std::vector<RootVec> pos, neg;
    for (auto& v : found) {
        int h = std::accumulate(v.begin(), v.end(), 0);
        (h > 0 ? pos : neg).push_back(v);
    }
    std::sort(pos.begin(), pos.end(), root_less);
    num_positive_ = static_cast<int>(pos.size());
    roots_ = pos;
    for (auto& v : pos) {
        RootVec m(l);
        for (int j = 0; j < l; ++j) m[j] = -v[j];
        roots_.push_back(m);
    }

    std::map<RootVec, int> index;
    for (int r = 0; r < num_roots(); ++r) index.emplace(roots_[r], r);
    simple_index_.resize(l);
    for (int i = 0; i < l; ++i) {
        RootVec e(l, 0);
        e[i] = 1;
        simple_index_[i] = index.at(e);
    }
    reflection_table_.assign(l, std::vector<int>(num_roots()));
    for (int i = 0; i < l; ++i)
        for (int r = 0; r < num_roots(); ++r)
            reflection_table_[i][r] = index.at(reflect_vec(i, roots_[r]));
}

int RootSystem::coxeter_order(int i, int j) const {
    if (i == j) return 1;
    switch (cartan_[i][j] * cartan_[j][i]) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: throw Error("invalid Cartan matrix product");
    }
}

WeylGroup WeylGroup::enumerate(const RootSystem& rs, const Config& cfg) {
    WeylGroup W;
    W.rs_ = &rs;
    const int n = rs.num_roots();
    const int l = rs.rank();

    std::vector<std::vector<std::uint8_t>> gens(l);
    for (int i = 0; i < l; ++i) {
        gens[i].resize(n);
        for (int r = 0; r < n; ++r) gens[i][r] = static_cast<std::uint8_t>(rs.reflect(i, r));
    }
    std::vector<std::uint8_t> id(n);
    for (int r = 0; r < n; ++r) id[r] = static_cast<std::uint8_t>(r);

    // BFS closure under left multiplication by generators.
    std::map<std::vector<std::uint8_t>, int> seen;
    std::vector<std::vector<std::uint8_t>> elems;
    seen.emplace(id, 0);
    elems.push_back(id);
    std::queue<int> todo;
    todo.push(0);
    while (!todo.empty()) {
        int cur = todo.front();
        todo.pop();
        for (int i = 0; i < l; ++i) {
            std::vector<std::uint8_t> next(n);
            for (int r = 0; r < n; ++r) next[r] = gens[i][elems[cur][r]];
            auto [it, fresh] = seen.emplace(next, static_cast<int>(elems.size()));
            if (fresh) {
                if (elems.size() >= cfg.weyl_cap)
                    throw SizeCapExceeded("Weyl group order exceeds cap " +
                                          std::to_string(cfg.weyl_cap));
                elems.push_back(std::move(next));
                todo.push(it->second);
            }
        }
    }

    // Length = inversion count; canonical order = (length, permutation).
    auto inv_count = [&](const std::vector<std::uint8_t>& p) {
        int c = 0;
        for (int r = 0; r < rs.num_positive_roots(); ++r)
            if (!rs.is_positive(p[r])) ++c;
        return c;
    };
    std::sort(elems.begin(), elems.end(),
              [&](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
                  int la = inv_count(a), lb = inv_count(b);
                  if (la != lb) return la < lb;
                  return a < b;
              });
    W.perms_ = std::move(elems);
    W.lengths_.resize(W.perms_.size());
    for (std::size_t k = 0; k < W.perms_.size(); ++k) {
        W.lengths_[k] = inv_count(W.perms_[k]);
        W.index_.emplace(W.perms_[k], static_cast<int>(k));
    }
    W.generator_ids_.resize(l);
    for (int i = 0; i < l; ++i) W.generator_ids_[i] = W.index_.at(gens[i]);
    return W;
}

int WeylGroup::lookup(const std::vector<std::uint8_t>& perm) const {
    auto it = index_.find(perm);
    if (it == index_.end()) throw Error("permutation not in enumerated group");
    return it->second;
}

int WeylGroup::multiply(int a, int b) const {
    const auto& pa = perms_[a];
    const auto& pb = perms_[b];
    std::vector<std::uint8_t> p(pa.size());
    for (std::size_t r = 0; r < p.size(); ++r) p[r] = pa[pb[r]];
    return lookup(p);
}

int WeylGroup::inverse(int a) const {
    const auto& pa = perms_[a];
    std::vector<std::uint8_t> p(pa.size());
    for (std::size_t r = 0; r < p.size(); ++r) p[pa[r]] = static_cast<std::uint8_t>(r);
    return lookup(p);
}

int WeylGroup::multiply_gen(int w, int i) const { return multiply(w, generator_ids_[i]); }

std::vector<int> WeylGroup::reduced_word(int w) const {
    // Repeatedly strip the smallest right descent; produces a canonical
    // reduced word with w = s_{word[0]} * ... * s_{word.back()}.
    std::vector<int> rev;
    int cur = w;
    while (cur != identity()) {
        int picked = -1;
        for (int i = 0; i < rank(); ++i) {
            if (descends_right(cur, i)) {
                picked = i;
                break;
            }
        }
        rev.push_back(picked);
        cur = multiply_gen(cur, picked);
    }
    return {rev.rbegin(), rev.rend()};
}

int WeylGroup::from_word(const std::vector<int>& word) const {
    int w = identity();
    for (int i : word) w = multiply_gen(w, i);
    return w;
}

std::string WeylGroup::word_string(int w) const {
    auto word = reduced_word(w);
    if (word.empty()) return "e";
    std::string out;
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (k) out += '*';
        out += 's' + std::to_string(word[k] + 1);
    }
    return out;
}

int WeylGroup::parse_word(std::string_view text) const {
    std::string t(text);
    for (char& c : t)
        if (c == '*' || c == ',') c = ' ';
    std::istringstream in(t);
    std::string tok;
    int w = identity();
    while (in >> tok) {
        if (tok == "e") continue;
        if (tok.size() < 2 || tok[0] != 's') throw Error("bad Weyl word token '" + tok + "'");
        int i = std::stoi(tok.substr(1)) - 1;
        if (i < 0 || i >= rank()) throw Error("generator index out of range in '" + tok + "'");
        w = multiply_gen(w, i);
    }
    return w;
}

int WeylGroup::element_order(int w) const {
    int n = 1, cur = w;
    while (cur != identity()) {
        cur = multiply(cur, w);
        ++n;
    }
    return n;
}

const std::vector<std::vector<int>>& WeylGroup::conjugacy_classes() const {
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    if (!classes_.empty()) return classes_;
    std::vector<int> cls(order(), -1);
    for (int start = 0; start < static_cast<int>(order()); ++start) {
        if (cls[start] != -1) continue;
        int label = static_cast<int>(classes_.size());
        std::vector<int> members;
        std::queue<int> todo;
        cls[start] = label;
        todo.push(start);
        while (!todo.empty()) {
            int x = todo.front();
            todo.pop();
            members.push_back(x);
            for (int i = 0; i < rank(); ++i) {
                int y = multiply(generator_ids_[i], multiply(x, generator_ids_[i]));
                if (cls[y] == -1) {
                    cls[y] = label;
                    todo.push(y);
                }
            }
        }
        std::sort(members.begin(), members.end());
        classes_.push_back(std::move(members));
    }
    return classes_;
}

const ParabolicCosets& WeylGroup::cosets(std::uint32_t subset_mask) const {
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    auto it = coset_cache_.find(subset_mask);
    if (it == coset_cache_.end()) {
        it = coset_cache_
                 .emplace(subset_mask, std::make_unique<ParabolicCosets>(*this, subset_mask))
                 .first;
    }
    return *it->second;
}

ParabolicCosets::ParabolicCosets(const WeylGroup& W, std::uint32_t subset_mask)
    : W_(&W), mask_(subset_mask) {
    // Enumerate W_S by closure.
    std::vector<char> in_sub(W.order(), 0);
    std::queue<int> todo;
    in_sub[W.identity()] = 1;
    todo.push(W.identity());
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop();
        for (int i = 0; i < W.rank(); ++i) {
            if (!(mask_ >> i & 1u)) continue;
            int y = W.multiply_gen(x, i);
            if (!in_sub[y]) {
                in_sub[y] = 1;
                todo.push(y);
            }
        }
    }
    for (int w = 0; w < static_cast<int>(W.order()); ++w)
        if (in_sub[w]) subgroup_.push_back(w);

    coset_of_.assign(W.order(), -1);
    for (int w = 0; w < static_cast<int>(W.order()); ++w) {
        int rep = decompose(w).min_rep;
        auto [it, fresh] = rep_rank_.emplace(rep, static_cast<int>(reps_.size()));
        if (fresh) reps_.push_back(rep);
        coset_of_[w] = it->second;
    }
    // Element ids ascend with canonical order, and reps are discovered in id
    // order above, so reps_ is already sorted.
}

ParabolicCosets::Decomposition ParabolicCosets::decompose(int w) const {
    const WeylGroup& W = *W_;
    Decomposition d;
    d.sub_word.clear();
    int cur = w;
    for (;;) {
        int picked = -1;
        for (int i = 0; i < W.rank(); ++i) {
            if ((mask_ >> i & 1u) && W.descends_right(cur, i)) {
                picked = i;
                break;
            }
        }
        if (picked < 0) break;
        d.sub_word.push_back(picked);
        cur = W.multiply_gen(cur, picked);
    }
    d.min_rep = cur;
    // w = min_rep * sub with sub = s_{word[k-1]} * ... * s_{word[0]};
    // applying sub to a diagram therefore starts with s_{word[0]}.
    int sub = W.identity();
    for (auto it = d.sub_word.rbegin(); it != d.sub_word.rend(); ++it)
        sub = W.multiply_gen(sub, *it);
    d.sub = sub;
    return d;
}

std::vector<ConjugacyClassInfo> conjugacy_class_info(const WeylGroup& W) {
    std::vector<ConjugacyClassInfo> out;
    for (const auto& cls : W.conjugacy_classes()) {
        ConjugacyClassInfo info;
        info.representative = cls.front();
        info.size = static_cast<int>(cls.size());
        info.element_order = W.element_order(cls.front());
        out.push_back(info);
    }
    return out;
}

}  // namespace todatopo
