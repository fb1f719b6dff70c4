#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "todatopo/errors.hpp"

namespace todatopo {

/// Global caps used when building root systems and enumerating Weyl groups.
struct Config {
    int rank_cap = 6;
    std::size_t weyl_cap = 1000000;
};

/// Coefficient vector of a root in the simple-root basis.
using RootVec = std::vector<int>;

/// Root-system data for a finite simple type at small rank.
///
/// Vertex numbering follows the Bourbaki conventions per type:
///   A_l : chain 1-2-...-l
///   B_l : chain, alpha_l short   (C[l-1][l] = -2)
///   C_l : chain, alpha_l long    (C[l][l-1] = -2)
///   D_l : chain 1-...-(l-2), with l-1 and l both attached to l-2
///   E_6 : chain 1-3-4-5-6, with 2 attached to 4
///   F_4 : chain, double bond between 2 and 3 (alpha_3, alpha_4 short)
///   G_2 : alpha_1 long, alpha_2 short
///
/// The Cartan matrix convention is C[i][j] = <alpha_i, alpha_j^v>, so a
/// simple reflection acts on a root phi = sum v_j alpha_j by
///   s_i(phi) = phi - (sum_j v_j C[j][i]) alpha_i.
class RootSystem {
  public:
    static RootSystem build(char type_label, int rank, const Config& cfg = Config{});
    /// Parses names such as "A2" or "F4".
    static RootSystem parse(std::string_view name, const Config& cfg = Config{});

    char type_label() const { return type_; }
    int rank() const { return rank_; }
    std::string name() const { return std::string(1, type_) + std::to_string(rank_); }

    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    int cartan(int i, int j) const { return cartan_[i][j]; }

    /// m_ij in {2,3,4,6} off-diagonal, 1 on the diagonal.
    int coxeter_order(int i, int j) const;

    /// All roots, positive first.  Index r and r + num_positive_roots() are
    /// negatives of each other; positive roots are sorted by (height,
    /// coefficient vector).
    const std::vector<RootVec>& roots() const { return roots_; }
    int num_positive_roots() const { return num_positive_; }
    int num_roots() const { return static_cast<int>(roots_.size()); }
    bool is_positive(int root_index) const { return root_index < num_positive_; }
    int negate(int root_index) const {
        return root_index < num_positive_ ? root_index + num_positive_ : root_index - num_positive_;
    }
    /// Index of the simple root alpha_i.
    int simple_root_index(int i) const { return simple_index_[i]; }
    /// Index of s_i(root).
    int reflect(int i, int root_index) const { return reflection_table_[i][root_index]; }

  private:
    RootSystem() = default;
    void close_roots();

    char type_ = 'A';
    int rank_ = 0;
    std::vector<std::vector<int>> cartan_;
    std::vector<RootVec> roots_;
    std::vector<int> simple_index_;
    std::vector<std::vector<int>> reflection_table_;
    int num_positive_ = 0;
};

class ParabolicCosets;

/// Fully enumerated Weyl group.  Elements are stored as permutations of the
/// root list and identified by dense ids 0..order()-1, sorted by (length,
/// permutation); id 0 is the identity.
///
/// Holds a reference to the RootSystem it was enumerated from; the root
/// system must outlive the group.
class WeylGroup {
  public:
    static WeylGroup enumerate(const RootSystem& rs, const Config& cfg = Config{});

    const RootSystem& root_system() const { return *rs_; }
    std::size_t order() const { return perms_.size(); }
    int rank() const { return rs_->rank(); }

    int identity() const { return 0; }
    int generator(int i) const { return generator_ids_[i]; }
    int length(int w) const { return lengths_[w]; }
    /// Image root index of `root` under w.
    int apply(int w, int root) const { return perms_[w][root]; }
    /// True iff w(alpha_i) is a negative root, i.e. l(w s_i) < l(w).
    bool descends_right(int w, int i) const {
        return !rs_->is_positive(perms_[w][rs_->simple_root_index(i)]);
    }

    int multiply(int a, int b) const;
    int inverse(int a) const;
    /// Right multiplication by a generator: w * s_i.
    int multiply_gen(int w, int i) const;

    /// A reduced word for w (letters are simple-root indices); deterministic.
    std::vector<int> reduced_word(int w) const;
    int from_word(const std::vector<int>& word) const;
    /// "e" or "s1*s3*s2" style rendering of reduced_word(w).
    std::string word_string(int w) const;
    /// Parses "e", "s1", "s1*s2", "s1 s2", "s1,s2".
    int parse_word(std::string_view text) const;

    /// Element order (smallest n > 0 with w^n = e).
    int element_order(int w) const;

    /// Conjugacy classes; each class is the sorted list of element ids and
    /// classes are sorted by their smallest member.
    const std::vector<std::vector<int>>& conjugacy_classes() const;

    /// Coset machinery for W_S, cached per subset mask.
    const ParabolicCosets& cosets(std::uint32_t subset_mask) const;

  private:
    WeylGroup() = default;
    int lookup(const std::vector<std::uint8_t>& perm) const;

    const RootSystem* rs_ = nullptr;
    std::vector<std::vector<std::uint8_t>> perms_;
    std::vector<int> lengths_;
    std::vector<int> generator_ids_;
    std::map<std::vector<std::uint8_t>, int> index_;

    mutable std::unique_ptr<std::mutex> cache_mutex_ = std::make_unique<std::mutex>();
    mutable std::map<std::uint32_t, std::unique_ptr<ParabolicCosets>> coset_cache_;
    mutable std::vector<std::vector<int>> classes_;
};

/// Minimal coset representatives and decompositions for W / W_S.
class ParabolicCosets {
  public:
    ParabolicCosets(const WeylGroup& W, std::uint32_t subset_mask);

    std::uint32_t subset_mask() const { return mask_; }
    /// Element ids of W_S, ascending.
    const std::vector<int>& subgroup() const { return subgroup_; }
    /// Minimal-length coset representatives, ascending by element id.
    const std::vector<int>& minimal_reps() const { return reps_; }
    std::size_t num_cosets() const { return reps_.size(); }

    /// w = minimal_rep * sub with sub in W_S and lengths additive.
    struct Decomposition {
        int min_rep;
        int sub;
        /// Letters of a reduced word for `sub`, in application order: acting
        /// on a diagram, apply s_{word[0]} first.
        std::vector<int> sub_word;
    };
    Decomposition decompose(int w) const;

    /// Index into minimal_reps() of the coset w W_S.
    int coset_index(int w) const { return coset_of_[w]; }
    int min_rep_of(int w) const { return reps_[coset_of_[w]]; }

  private:
    const WeylGroup* W_;
    std::uint32_t mask_;
    std::vector<int> subgroup_;
    std::vector<int> reps_;
    std::vector<int> coset_of_;
    std::map<int, int> rep_rank_;
};

/// Conjugacy-class summary used in character output.
struct ConjugacyClassInfo {
    int representative;
    int size;
    int element_order;
};

std::vector<ConjugacyClassInfo> conjugacy_class_info(const WeylGroup& W);

}  // namespace todatopo
