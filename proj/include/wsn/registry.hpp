#ifndef WSN_REGISTRY_HPP
#define WSN_REGISTRY_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wsn/keying.hpp"

namespace wsn {

enum class Role { Rfd, Ffd, Coordinator, Gateway };

std::string to_string(Role role);

/// One network node. For table-loaded nodes the name, short address and
/// the four 16-bit MAC groups all carry the same value; the coordinator
/// is injected from configuration and exempt from that pattern.
struct NodeDescriptor {
    std::string name;     ///< 4 hex digits
    std::string location;
    std::uint64_t mac = 0;
    std::uint16_t short_addr = 0;
    Role role = Role::Rfd;
    /// Listening duty cycle in (0,1]; nullopt means always-on (active).
    std::optional<double> duty_cycle;

    bool operator==(const NodeDescriptor&) const = default;
};

/// One sensor's update-time row: when it last reported and when the next
/// report is due (absent for sensors with no pending update).
struct SensorSchedule {
    std::string node_name;
    int sensor_id = 0;
    Timestamp last_update;
    std::optional<Timestamp> next_update;

    bool operator==(const SensorSchedule&) const = default;
};

/// Parses the node table: a header line, then per row
///   name<TAB>location<TAB>mac_hex16<TAB>short_hex4
/// Lines starting with '#' are comments. Checks per-row invariants
/// (4-hex-digit name, short address equals the name value, MAC is the
/// short address repeated in all four 16-bit groups) and name uniqueness.
/// Roles are not in the table; every row loads as an RFD until the
/// registry assigns them.
std::vector<NodeDescriptor> load_nodes(std::istream& source);
std::vector<NodeDescriptor> load_nodes_text(std::string_view text);

/// Parses the sensor schedule: a header line, then per row
///   name<TAB>sensor_id<TAB>last_update<TAB>next_update_or_dash
/// with timestamps formatted YYYY-MM-DD HH:MM:SS. Every row must
/// reference a loaded node, and next_update, when present, must come
/// strictly after last_update.
std::vector<SensorSchedule> load_schedule(std::istream& source,
                                          const std::vector<NodeDescriptor>& nodes);
std::vector<SensorSchedule> load_schedule_text(std::string_view text,
                                               const std::vector<NodeDescriptor>& nodes);

/// The assembled network: table nodes plus the configured coordinator,
/// with roles and duty cycles applied. Immutable once built.
class Registry {
public:
    /// 'relays' names the nodes that act as FFDs; everything else stays an
    /// RFD. 'passive' maps node names to listening duty cycles. Exactly one
    /// coordinator may exist per network.
    static Registry assemble(std::vector<NodeDescriptor> table_nodes,
                             NodeDescriptor coordinator,
                             const std::set<std::string>& relays,
                             const std::map<std::string, double>& passive);

    const std::vector<NodeDescriptor>& nodes() const { return nodes_; }
    const NodeDescriptor& coordinator() const { return nodes_[coordinator_index_]; }

    const NodeDescriptor* find_by_name(std::string_view name) const;
    const NodeDescriptor* find_by_mac(std::uint64_t mac) const;

private:
    Registry() = default;

    std::vector<NodeDescriptor> nodes_; // sorted by name
    std::map<std::string, std::size_t, std::less<>> by_name_;
    std::map<std::uint64_t, std::size_t> by_mac_;
    std::size_t coordinator_index_ = 0;
};

} // namespace wsn

#endif // WSN_REGISTRY_HPP
