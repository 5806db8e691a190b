#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ggasp {

/// Raised when an instance, assignment or reduction source fails validation.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an exhaustive search is asked to run above its configured size bound.
class BoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a solver is invoked outside its preconditions or fails internally.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr int kVoidActivity = -1;

/// An (activity, group size) pair. The void alternative is (kVoidActivity, 1):
/// staying alone doing nothing.
struct Alternative {
    int activity = kVoidActivity;
    int size = 1;

    static Alternative void_alt() { return Alternative{kVoidActivity, 1}; }
    bool is_void() const { return activity == kVoidActivity; }

    friend bool operator==(const Alternative&, const Alternative&) = default;
    friend auto operator<=>(const Alternative&, const Alternative&) = default;
};

enum class Comparison { Strict, Indifferent, Worse };

struct ActivityClass {
    std::string id;
    int copies = 1;
};

/// Pre-validation instance description, as read from the JSON format.
struct RawInstance {
    struct PrefEntry {
        std::string activity;
        int size = 1;
        int rank = 0;
    };

    int players = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<ActivityClass> activities;
    std::vector<std::vector<PrefEntry>> prefs;  // indexed by player
    std::string provenance;
};

/// A validated instance: players on a communication graph, activity classes
/// with copy counts, and rank-encoded weak-order preferences over alternatives.
///
/// Ranks default to 0 for the void alternative and -1 for any unlisted
/// non-void alternative, which makes every preference relation a complete
/// weak order. A player approves (a,k) iff its rank is positive.
class Instance {
public:
    int player_count() const { return n_; }
    int activity_count() const { return static_cast<int>(activities_.size()); }

    const std::vector<ActivityClass>& activities() const { return activities_; }
    const ActivityClass& activity(int a) const { return activities_.at(a); }
    int copies(int a) const { return activities_.at(a).copies; }
    /// Index of the class with the given id, or -1.
    int activity_index(const std::string& id) const;

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int i) const { return adj_.at(i); }
    bool adjacent(int i, int j) const { return adj_matrix_[static_cast<size_t>(i) * n_ + j]; }

    int rank(int player, Alternative x) const;
    Comparison prefers(int player, Alternative x, Alternative y) const;
    bool approves(int player, Alternative x) const { return rank(player, x) > 0; }

    /// A class is copyable iff it has at least player_count() copies.
    bool copyable(int a) const { return copies(a) >= n_; }
    bool all_copyable() const;
    bool all_single_copy() const;

    const std::string& provenance() const { return provenance_; }

    friend Instance build_instance(const RawInstance& spec);

private:
    int n_ = 0;
    std::vector<ActivityClass> activities_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<bool> adj_matrix_;
    // rank_table_[player][activity + 1][size]; slot 0 is the void activity.
    std::vector<std::vector<std::vector<int>>> rank_table_;
    std::string provenance_;
};

/// Validates and freezes a raw description. Throws ValidationError on
/// self-loops, out-of-range ids, duplicate classes, bad sizes or copy counts.
Instance build_instance(const RawInstance& spec);

using Coalition = std::vector<int>;  // sorted player ids

/// True iff the coalition induces a connected subgraph. Throws on empty input.
bool is_feasible_coalition(const Instance& inst, const Coalition& coalition);

/// Identifies one group: a copy of an activity class.
struct GroupRef {
    int activity = 0;
    int copy = 0;

    friend bool operator==(const GroupRef&, const GroupRef&) = default;
    friend auto operator<=>(const GroupRef&, const GroupRef&) = default;
};

/// Map from players to groups; a disengaged slot means the void activity.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int players) : slots_(players) {}

    int size() const { return static_cast<int>(slots_.size()); }
    bool is_void(int player) const { return !slots_.at(player).has_value(); }
    const std::optional<GroupRef>& slot(int player) const { return slots_.at(player); }

    void assign(int player, GroupRef group) { slots_.at(player) = group; }
    void clear(int player) { slots_.at(player).reset(); }

    /// Non-empty groups with their sorted member lists, in deterministic order.
    std::map<GroupRef, std::vector<int>> groups() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<std::optional<GroupRef>> slots_;
};

/// The alternative player i experiences under pi: (activity, |group|) or void.
Alternative current_alternative(const Instance& inst, const Assignment& pi, int player);

/// Structural well-formedness: slot indices in range. Throws ValidationError.
void validate_assignment(const Instance& inst, const Assignment& pi);

enum class TopologyTag { Path, Star, Forest, SmallComponents, General };

struct Topology {
    TopologyTag tag = TopologyTag::General;
    std::vector<std::vector<int>> components;  // sorted vertex lists
    int max_component_size = 0;
    int component_count = 0;
    bool acyclic = false;
    bool connected = false;
};

/// Classifies the communication graph. Disconnected graphs are tagged
/// SmallComponents; connected ones are Path, Star, Forest (tree that is
/// neither) or General. A two-node path is reported as Path.
Topology classify_topology(const Instance& inst);

const char* to_string(TopologyTag tag);
const char* to_string(Comparison cmp);

}  // namespace ggasp
