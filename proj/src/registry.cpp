#include "wsn/registry.hpp"

#include <algorithm>
#include <sstream>

#include "wsn/errors.hpp"
#include "wsn/textutil.hpp"

namespace wsn {

std::string to_string(Role role) {
    switch (role) {
        case Role::Rfd: return "rfd";
        case Role::Ffd: return "ffd";
        case Role::Coordinator: return "coordinator";
        case Role::Gateway: return "gateway";
    }
    return "?";
}

namespace {

// Strips the header, skips blanks and '#' comments, hands each data row to
// the callback with its 1-based line number.
template <typename RowFn>
void for_each_row(std::istream& source, RowFn&& row_fn) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(source, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        if (!header_seen) {
            header_seen = true; // first non-comment line is the header
            continue;
        }
        row_fn(line_no, body);
    }
}

} // namespace

std::vector<NodeDescriptor> load_nodes(std::istream& source) {
    std::vector<NodeDescriptor> nodes;
    std::set<std::string> seen;
    for_each_row(source, [&](std::size_t line_no, std::string_view body) {
        const auto cols = split(body, '\t');
        if (cols.size() != 4) {
            throw ParseError(line_no, "want 4 tab-separated columns, got " +
                                          std::to_string(cols.size()));
        }
        NodeDescriptor node;
        node.name = std::string(trim(cols[0]));
        node.location = std::string(trim(cols[1]));
        if (!is_hex_name(node.name)) {
            throw ParseError(line_no, "node name must be 4 hex digits");
        }
        const auto mac = parse_hex(trim(cols[2]), 16);
        const auto short_addr = parse_hex(trim(cols[3]), 4);
        if (!mac || trim(cols[2]).size() != 16) {
            throw ParseError(line_no, "MAC must be 16 hex digits");
        }
        if (!short_addr || trim(cols[3]).size() != 4) {
            throw ParseError(line_no, "short address must be 4 hex digits");
        }
        node.mac = *mac;
        node.short_addr = static_cast<std::uint16_t>(*short_addr);
        if (!seen.insert(node.name).second) throw DuplicateNameError(node.name);

        // Table rows follow a strict pattern: name, short address and all
        // four 16-bit MAC groups carry one value.
        if (node.short_addr != static_cast<std::uint16_t>(*parse_hex(node.name, 4))) {
            throw InvariantViolationError(node.name, "short address differs from name value");
        }
        for (int shift = 0; shift < 64; shift += 16) {
            if (static_cast<std::uint16_t>(node.mac >> shift) != node.short_addr) {
                throw InvariantViolationError(node.name,
                                              "MAC groups do not repeat the short address");
            }
        }
        nodes.push_back(std::move(node));
    });
    return nodes;
}

std::vector<NodeDescriptor> load_nodes_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_nodes(in);
}

std::vector<SensorSchedule> load_schedule(std::istream& source,
                                          const std::vector<NodeDescriptor>& nodes) {
    std::set<std::string> known;
    for (const auto& n : nodes) known.insert(n.name);

    std::vector<SensorSchedule> schedule;
    std::size_t row_no = 0;
    for_each_row(source, [&](std::size_t line_no, std::string_view body) {
        ++row_no;
        const auto cols = split(body, '\t');
        if (cols.size() != 4) {
            throw ParseError(line_no, "want 4 tab-separated columns, got " +
                                          std::to_string(cols.size()));
        }
        SensorSchedule entry;
        entry.node_name = std::string(trim(cols[0]));
        if (!known.contains(entry.node_name)) throw UnknownNodeError(entry.node_name);
        try {
            entry.sensor_id = std::stoi(std::string(trim(cols[1])));
        } catch (const std::exception&) {
            throw ParseError(line_no, "bad sensor id");
        }
        if (entry.sensor_id <= 0) throw ParseError(line_no, "sensor id must be positive");
        const auto last = Timestamp::parse(trim(cols[2]));
        if (!last) throw ParseError(line_no, "bad last_update timestamp");
        entry.last_update = *last;
        const std::string_view next_text = trim(cols[3]);
        if (next_text != "-") {
            const auto next = Timestamp::parse(next_text);
            if (!next) throw ParseError(line_no, "bad next_update timestamp");
            if (next->to_epoch() <= entry.last_update.to_epoch()) {
                throw NonMonotoneUpdateError(row_no);
            }
            entry.next_update = *next;
        }
        schedule.push_back(std::move(entry));
    });
    return schedule;
}

std::vector<SensorSchedule> load_schedule_text(std::string_view text,
                                               const std::vector<NodeDescriptor>& nodes) {
    std::istringstream in{std::string(text)};
    return load_schedule(in, nodes);
}

Registry Registry::assemble(std::vector<NodeDescriptor> table_nodes,
                            NodeDescriptor coordinator,
                            const std::set<std::string>& relays,
                            const std::map<std::string, double>& passive) {
    coordinator.role = Role::Coordinator;
    for (auto& node : table_nodes) {
        if (node.role == Role::Coordinator) {
            throw InvariantViolationError(node.name, "second coordinator in node table");
        }
        node.role = relays.contains(node.name) ? Role::Ffd : Role::Rfd;
        if (auto it = passive.find(node.name); it != passive.end()) {
            node.duty_cycle = it->second;
        }
    }
    table_nodes.push_back(std::move(coordinator));

    std::sort(table_nodes.begin(), table_nodes.end(),
              [](const NodeDescriptor& a, const NodeDescriptor& b) { return a.name < b.name; });

    Registry registry;
    registry.nodes_ = std::move(table_nodes);
    for (std::size_t i = 0; i < registry.nodes_.size(); ++i) {
        const auto& node = registry.nodes_[i];
        if (!registry.by_name_.emplace(node.name, i).second) {
            throw DuplicateNameError(node.name);
        }
        if (!registry.by_mac_.emplace(node.mac, i).second) {
            throw InvariantViolationError(node.name, "duplicate MAC address");
        }
        if (node.role == Role::Coordinator) registry.coordinator_index_ = i;
    }
    return registry;
}

const NodeDescriptor* Registry::find_by_name(std::string_view name) const {
    const auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &nodes_[it->second];
}

const NodeDescriptor* Registry::find_by_mac(std::uint64_t mac) const {
    const auto it = by_mac_.find(mac);
    return it == by_mac_.end() ? nullptr : &nodes_[it->second];
}

} // namespace wsn
