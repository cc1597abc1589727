#include "wsn/meshsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <queue>
#include <sstream>

#include "wsn/sbox.hpp"
#include "wsn/textutil.hpp"

namespace wsn {

// ---------------------------------------------------------------------------
// Config

namespace {

double parse_double(std::string_view value, std::string_view key) {
    try {
        std::size_t used = 0;
        const std::string text(value);
        const double d = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return d;
    } catch (const std::exception&) {
        throw ConfigInvalidError("bad number for " + std::string(key) + ": \"" +
                                 std::string(value) + "\"");
    }
}

std::uint64_t parse_u64(std::string_view value, std::string_view key) {
    try {
        std::size_t used = 0;
        const std::string text(value);
        const std::uint64_t v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigInvalidError("bad integer for " + std::string(key) + ": \"" +
                                 std::string(value) + "\"");
    }
}

std::uint64_t parse_mac(std::string_view value, std::string_view key) {
    if (value.starts_with("0x") || value.starts_with("0X")) value.remove_prefix(2);
    const auto mac = parse_hex(value, 16);
    if (!mac || value.size() != 16) {
        throw ConfigInvalidError("bad MAC for " + std::string(key) +
                                 " (want 16 hex digits)");
    }
    return *mac;
}

void apply_config_key(SimConfig& config, std::string_view key, std::string_view value) {
    if (key == "key_mode") {
        const auto spec = parse_key_spec(value);
        if (!spec) {
            throw ConfigInvalidError("unknown key_mode \"" + std::string(value) +
                                     "\" (mac|name|ts-hours|ts-minutes|ts-seconds)");
        }
        config.key_spec = *spec;
    } else if (key == "noise_bit_flip_prob") {
        config.noise_bit_flip_prob = parse_double(value, key);
    } else if (key == "duty_cycle_default") {
        config.duty_cycle_default = parse_double(value, key);
    } else if (key == "rng_seed") {
        config.rng_seed = parse_u64(value, key);
    } else if (key == "sim_duration") {
        config.sim_duration_s = parse_u64(value, key);
    } else if (key == "default_period") {
        config.default_period_s = parse_u64(value, key);
    } else if (key == "coordinator_name") {
        config.coordinator_name = std::string(value);
    } else if (key == "coordinator_mac") {
        config.coordinator_mac = parse_mac(value, key);
    } else if (key == "frequency_mhz") {
        config.radio.frequency_mhz = parse_double(value, key);
    } else if (key == "tx_power_dbm") {
        config.radio.tx_power_dbm = parse_double(value, key);
    } else if (key == "energy_tx_mj_per_byte") {
        config.energy.tx_mj_per_byte = parse_double(value, key);
    } else if (key == "energy_rx_mj_per_byte") {
        config.energy.rx_mj_per_byte = parse_double(value, key);
    } else if (key == "energy_idle_mj_per_s") {
        config.energy.idle_mj_per_s = parse_double(value, key);
    } else if (key == "initial_energy_j") {
        config.initial_energy_j = parse_double(value, key);
    } else if (key == "relays") {
        for (auto part : split(value, ',')) {
            const auto name = trim(part);
            if (!name.empty()) config.relays.insert(std::string(name));
        }
    } else if (key == "passive") {
        for (auto part : split(value, ',')) {
            const auto entry = trim(part);
            if (entry.empty()) continue;
            const auto colon = entry.find(':');
            if (colon == std::string_view::npos) {
                config.passive[std::string(entry)] = 0.0; // 0 = use default cycle
            } else {
                config.passive[std::string(trim(entry.substr(0, colon)))] =
                    parse_double(trim(entry.substr(colon + 1)), key);
            }
        }
    } else {
        throw ConfigInvalidError("unknown key \"" + std::string(key) + "\"");
    }
}

} // namespace

SimConfig parse_config(std::istream& source) {
    SimConfig config;
    std::string line;
    bool in_topology = false;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            body = body.substr(0, hash);
        }
        body = trim(body);
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body == "[topology]") {
                in_topology = true;
                continue;
            }
            throw ParseError(line_no, "unknown section " + std::string(body));
        }
        if (in_topology) {
            const auto colon = body.find(':');
            if (colon == std::string_view::npos) {
                throw ParseError(line_no, "topology line needs \"name: neighbors\"");
            }
            const std::string name(trim(body.substr(0, colon)));
            if (name.empty()) throw ParseError(line_no, "empty node name");
            auto& neighbors = config.topology[name];
            for (auto part : split(body.substr(colon + 1), ',')) {
                const auto neighbor = trim(part);
                if (!neighbor.empty()) neighbors.emplace_back(neighbor);
            }
        } else {
            const auto eq = body.find('=');
            if (eq == std::string_view::npos) {
                throw ParseError(line_no, "expected key = value");
            }
            try {
                apply_config_key(config, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
            } catch (const ConfigInvalidError& e) {
                throw ParseError(line_no, e.what());
            }
        }
    }
    return config;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalidError("cannot open " + path);
    return parse_config(in);
}

Registry build_registry(const SimConfig& config, std::vector<NodeDescriptor> table_nodes) {
    if (!is_hex_name(config.coordinator_name)) {
        throw ConfigInvalidError("coordinator_name must be 4 hex digits");
    }
    std::set<std::string> table_names;
    for (const auto& node : table_nodes) table_names.insert(node.name);
    for (const auto& relay : config.relays) {
        if (!table_names.contains(relay)) {
            throw ConfigInvalidError("relay " + relay + " is not in the node table");
        }
    }

    std::map<std::string, double> passive;
    for (const auto& [name, cycle] : config.passive) {
        if (name == config.coordinator_name) continue; // the coordinator is always on
        if (!table_names.contains(name)) {
            throw ConfigInvalidError("passive node " + name + " is not in the node table");
        }
        const double resolved = cycle == 0.0 ? config.duty_cycle_default : cycle;
        if (!(resolved > 0.0 && resolved <= 1.0)) {
            throw ConfigInvalidError("duty cycle for " + name + " must be in (0,1]");
        }
        passive[name] = resolved;
    }

    NodeDescriptor coordinator;
    coordinator.name = config.coordinator_name;
    coordinator.location = "Base Station";
    coordinator.mac = config.coordinator_mac;
    coordinator.short_addr =
        static_cast<std::uint16_t>(*parse_hex(config.coordinator_name, 4));
    coordinator.role = Role::Coordinator;
    return Registry::assemble(std::move(table_nodes), std::move(coordinator),
                              config.relays, passive);
}

// ---------------------------------------------------------------------------
// Routing

std::map<std::string, std::string> build_routes(const Topology& topology,
                                                const std::string& coordinator,
                                                const std::set<std::string>& relays) {
    // Symmetrize: a link listed on either endpoint counts for both.
    std::map<std::string, std::set<std::string>> adj;
    for (const auto& [name, neighbors] : topology) {
        adj[name]; // nodes with no listed neighbors still exist
        for (const auto& n : neighbors) {
            adj[name].insert(n);
            adj[n].insert(name);
        }
    }
    if (!adj.contains(coordinator)) throw UnreachableError(coordinator);

    const auto can_relay = [&](const std::string& name) {
        return name == coordinator || relays.contains(name);
    };

    // BFS outward from the coordinator. A node is reached through a parent
    // only if that parent can relay; among equal-depth parents the
    // lexicographically smallest wins (adj sets iterate in name order and
    // the frontier is processed in insertion order per level).
    std::map<std::string, std::string> next_hop;
    std::map<std::string, int> dist;
    dist[coordinator] = 0;
    std::deque<std::string> frontier{coordinator};
    while (!frontier.empty()) {
        const std::string u = frontier.front();
        frontier.pop_front();
        if (!can_relay(u)) continue; // leaves terminate paths
        for (const auto& v : adj.at(u)) {
            if (dist.contains(v)) {
                // equal-depth parent with a smaller name wins the tie
                if (dist[v] == dist[u] + 1 && u < next_hop[v]) next_hop[v] = u;
                continue;
            }
            dist[v] = dist[u] + 1;
            next_hop[v] = u;
            frontier.push_back(v);
        }
    }
    for (const auto& [name, _] : adj) {
        if (name != coordinator && !next_hop.contains(name)) throw UnreachableError(name);
    }
    return next_hop;
}

int route_hops(const std::map<std::string, std::string>& routes,
               const std::string& from, const std::string& coordinator) {
    int hops = 0;
    std::string at = from;
    while (at != coordinator) {
        const auto it = routes.find(at);
        if (it == routes.end()) throw UnreachableError(from);
        at = it->second;
        if (++hops > static_cast<int>(routes.size()) + 1) {
            throw DomainError("routing loop via " + from);
        }
    }
    return hops;
}

// ---------------------------------------------------------------------------
// Node-side operations

Frame originate_reading(const NodeDescriptor& node, const SensorSchedule& sensor,
                        std::uint8_t value, const Timestamp& now, const KeySpec& spec) {
    if (sensor.node_name != node.name) {
        throw DomainError("schedule entry for " + sensor.node_name +
                          " originated by " + node.name);
    }
    Frame frame;
    frame.flags = encode_flags(spec);
    frame.source_mac = node.mac;
    frame.source_short = node.short_addr;
    frame.timestamp = now.to_epoch();
    const std::uint8_t plain[1] = {value};
    frame.payload = encrypt_payload(plain, derive_key(spec, node, now));
    return frame;
}

std::vector<std::uint8_t> transmit(std::span<const std::uint8_t> bytes,
                                   double bit_flip_prob, std::mt19937_64& rng) {
    std::vector<std::uint8_t> out(bytes.begin(), bytes.end());
    if (bit_flip_prob <= 0.0) return out;
    std::bernoulli_distribution flip(std::min(bit_flip_prob, 1.0));
    for (auto& byte : out) {
        for (int bit = 0; bit < 8; ++bit) {
            if (flip(rng)) byte ^= static_cast<std::uint8_t>(1u << bit);
        }
    }
    return out;
}

std::string to_string(ReceiveStatus status) {
    switch (status) {
        case ReceiveStatus::Delivered: return "delivered";
        case ReceiveStatus::BadMagic: return "bad-magic";
        case ReceiveStatus::BadVersion: return "bad-version";
        case ReceiveStatus::TruncatedFrame: return "truncated-frame";
        case ReceiveStatus::LengthMismatch: return "length-mismatch";
        case ReceiveStatus::ChecksumMismatch: return "checksum-mismatch";
        case ReceiveStatus::ReservedFlags: return "reserved-flags";
        case ReceiveStatus::UnknownSource: return "unknown-source";
    }
    return "?";
}

namespace {

ReceiveStatus to_receive_status(FrameError e) {
    switch (e) {
        case FrameError::BadMagic: return ReceiveStatus::BadMagic;
        case FrameError::BadVersion: return ReceiveStatus::BadVersion;
        case FrameError::TruncatedFrame: return ReceiveStatus::TruncatedFrame;
        case FrameError::LengthMismatch: return ReceiveStatus::LengthMismatch;
        case FrameError::ChecksumMismatch: return ReceiveStatus::ChecksumMismatch;
    }
    return ReceiveStatus::ChecksumMismatch;
}

} // namespace

ReceiveOutcome coordinator_receive(std::span<const std::uint8_t> bytes,
                                   const Registry& registry,
                                   const KeySpec& expected_spec) {
    ReceiveOutcome outcome;
    const auto decoded = decode_frame(bytes);
    if (const auto* error = std::get_if<FrameError>(&decoded)) {
        outcome.status = to_receive_status(*error);
        return outcome;
    }
    const Frame& frame = std::get<Frame>(decoded);

    const auto spec = decode_flags(frame.flags);
    if (!spec) {
        outcome.status = ReceiveStatus::ReservedFlags;
        return outcome;
    }
    outcome.frame_spec = spec;
    outcome.spec_mismatch = (*spec != expected_spec);

    const NodeDescriptor* source = registry.find_by_mac(frame.source_mac);
    if (!source) {
        outcome.status = ReceiveStatus::UnknownSource;
        return outcome;
    }

    const Timestamp ts = Timestamp::from_epoch(frame.timestamp);
    const KeyByte key = derive_key(*spec, *source, ts);
    outcome.status = ReceiveStatus::Delivered;
    outcome.reading = DeliveredReading{source->name, decrypt_payload(frame.payload, key), ts};
    return outcome;
}

// ---------------------------------------------------------------------------
// Event loop

namespace {

struct EventAfter {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.kind != b.kind) return a.kind > b.kind;
        if (a.subject != b.subject) return a.subject > b.subject;
        return a.seq > b.seq;
    }
};

struct NodeState {
    const NodeDescriptor* desc = nullptr;
    double energy_mj = 0.0;
    std::uint64_t last_charge = 0;
    bool alive = true;
    bool listening = true;        // toggled by window events for passive nodes
    std::uint64_t listen_len = 60; // seconds listening per 60 s period
};

struct Flight {
    std::string origin;
    std::uint8_t value = 0;
};

class EventLoop {
public:
    EventLoop(const SimConfig& config, const Registry& registry,
              const std::vector<SensorSchedule>& schedule,
              const std::function<void(const DeliveredReading&)>& sink)
        : config_(config), registry_(registry), schedule_(schedule), sink_(sink),
          rng_(config.rng_seed) {}

    SimReport run();

private:
    void validate();
    void seed_events();
    void handle(const SimEvent& event);
    void handle_reading_due(const SimEvent& event);
    void handle_frame_arrival(const SimEvent& event);
    void deliver_to_coordinator(const SimEvent& event, const Flight& flight);
    void forward(const std::string& from, std::uint64_t now,
                 std::span<const std::uint8_t> bytes, std::uint64_t flight_id);

    void push(SimEvent event) {
        event.seq = next_seq_++;
        queue_.push(std::move(event));
    }

    // Applies idle drain up to `now`; returns whether the node is still up.
    bool charge_idle(NodeState& node, std::uint64_t now) {
        if (!node.alive) return false;
        if (now > node.last_charge) {
            node.energy_mj -= config_.energy.idle_mj_per_s *
                              static_cast<double>(now - node.last_charge);
            node.last_charge = now;
        }
        return check_depleted(node);
    }

    bool spend(NodeState& node, double cost_mj) {
        node.energy_mj -= cost_mj;
        return check_depleted(node);
    }

    bool check_depleted(NodeState& node) {
        if (node.energy_mj <= 0.0) {
            node.energy_mj = 0.0;
            node.alive = false;
        }
        return node.alive;
    }

    // Predicts when idle drain alone would empty the node, so long-dead
    // nodes are discovered without waiting for traffic.
    void schedule_depletion_probe(NodeState& node, std::uint64_t now) {
        if (!node.alive || config_.energy.idle_mj_per_s <= 0.0) return;
        const double horizon = node.energy_mj / config_.energy.idle_mj_per_s;
        const auto at = now + static_cast<std::uint64_t>(std::ceil(horizon));
        if (at > drain_deadline_ || at == probe_at_[node.desc->name]) return;
        probe_at_[node.desc->name] = at;
        push({at, EventKind::NodeDepleted, node.desc->name, {}, 0});
    }

    const SimConfig& config_;
    const Registry& registry_;
    const std::vector<SensorSchedule>& schedule_;
    const std::function<void(const DeliveredReading&)>& sink_;

    std::mt19937_64 rng_;
    std::priority_queue<SimEvent, std::vector<SimEvent>, EventAfter> queue_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t epoch0_ = 0;
    std::uint64_t drain_deadline_ = 0; // no event may be scheduled past this
    std::map<std::string, NodeState> nodes_;
    std::map<std::string, std::string> routes_;
    std::map<std::string, std::uint64_t> period_; // per schedule row index key
    std::map<std::uint64_t, Flight> flights_;
    std::map<std::string, std::uint64_t> probe_at_;
    std::uint64_t next_flight_ = 1;
    SimReport report_;
};

void EventLoop::validate() {
    const auto& cfg = config_;
    if (!(cfg.noise_bit_flip_prob >= 0.0 && cfg.noise_bit_flip_prob <= 1.0)) {
        throw ConfigInvalidError("noise_bit_flip_prob must be in [0,1]");
    }
    if (!(cfg.duty_cycle_default > 0.0 && cfg.duty_cycle_default <= 1.0)) {
        throw ConfigInvalidError("duty_cycle_default must be in (0,1]");
    }
    if (cfg.default_period_s == 0) throw ConfigInvalidError("default_period must be positive");
    if (cfg.initial_energy_j < 0.0) throw ConfigInvalidError("initial_energy_j is negative");
    if (cfg.energy.tx_mj_per_byte < 0.0 || cfg.energy.rx_mj_per_byte < 0.0 ||
        cfg.energy.idle_mj_per_s < 0.0) {
        throw ConfigInvalidError("energy costs must be nonnegative");
    }
    for (const auto& [name, neighbors] : cfg.topology) {
        if (!registry_.find_by_name(name)) {
            throw ConfigInvalidError("topology node " + name + " is not in the registry");
        }
        for (const auto& n : neighbors) {
            if (!registry_.find_by_name(n)) {
                throw ConfigInvalidError("topology neighbor " + n + " is not in the registry");
            }
        }
    }
    try {
        routes_ = build_routes(cfg.topology, registry_.coordinator().name, cfg.relays);
    } catch (const UnreachableError& e) {
        throw ConfigInvalidError(e.what());
    }
    for (const auto& node : registry_.nodes()) {
        if (node.role != Role::Coordinator && !routes_.contains(node.name)) {
            throw ConfigInvalidError("node " + node.name + " is not in the topology");
        }
    }
}

void EventLoop::seed_events() {
    drain_deadline_ =
        config_.sim_duration_s + registry_.nodes().size() + 2; // longest possible drain

    for (const auto& node : registry_.nodes()) {
        NodeState state;
        state.desc = &node;
        state.energy_mj = config_.initial_energy_j * 1000.0;
        if (node.duty_cycle) {
            state.listening = false; // until the first window opens at t = 0
            state.listen_len = std::clamp<std::uint64_t>(
                static_cast<std::uint64_t>(std::llround(*node.duty_cycle * 60.0)), 1, 60);
        }
        nodes_.emplace(node.name, state);
        schedule_depletion_probe(nodes_.at(node.name), 0);
        if (node.duty_cycle && state.listen_len < 60) {
            push({0, EventKind::ListenWindowOpen, node.name, {}, 0});
        } else if (node.duty_cycle) {
            nodes_.at(node.name).listening = true; // cycle rounds to the whole period
        }
    }

    // The sim clock starts at the earliest pending update; rows with no
    // pending update first fire one default period after the start.
    bool have_epoch = false;
    for (const auto& row : schedule_) {
        if (row.next_update) {
            const auto e = row.next_update->to_epoch();
            if (!have_epoch || e < epoch0_) epoch0_ = e, have_epoch = true;
        }
    }
    if (!have_epoch) {
        for (const auto& row : schedule_) {
            const auto e = row.last_update.to_epoch();
            if (!have_epoch || e < epoch0_) epoch0_ = e, have_epoch = true;
        }
    }

    for (std::size_t i = 0; i < schedule_.size(); ++i) {
        const auto& row = schedule_[i];
        std::uint64_t first;
        std::uint64_t period;
        if (row.next_update) {
            first = row.next_update->to_epoch() - epoch0_;
            period = row.next_update->to_epoch() - row.last_update.to_epoch();
        } else {
            first = config_.default_period_s;
            period = config_.default_period_s;
        }
        period_[row.node_name + "#" + std::to_string(i)] = period;
        if (first <= config_.sim_duration_s) {
            SimEvent event{first, EventKind::ReadingDue, row.node_name, {}, 0};
            event.schedule_row = i;
            push(std::move(event));
        }
    }
}

void EventLoop::handle(const SimEvent& event) {
    auto& node = nodes_.at(event.subject);
    switch (event.kind) {
        case EventKind::NodeDepleted:
            charge_idle(node, event.time); // flips `alive` if truly empty now
            break;
        case EventKind::ListenWindowOpen:
            node.listening = true;
            if (event.time + node.listen_len <= drain_deadline_) {
                push({event.time + node.listen_len, EventKind::ListenWindowClose,
                      event.subject, {}, 0});
            }
            break;
        case EventKind::ListenWindowClose:
            node.listening = false;
            if (event.time + (60 - node.listen_len) <= drain_deadline_) {
                push({event.time + (60 - node.listen_len), EventKind::ListenWindowOpen,
                      event.subject, {}, 0});
            }
            break;
        case EventKind::ReadingDue:
            handle_reading_due(event);
            break;
        case EventKind::FrameArrival:
            handle_frame_arrival(event);
            break;
    }
}

void EventLoop::handle_reading_due(const SimEvent& event) {
    auto& node = nodes_.at(event.subject);
    if (!charge_idle(node, event.time)) return; // depleted nodes stop participating

    const auto& row = schedule_[event.schedule_row];
    const std::uint8_t value =
        static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 255)(rng_));
    const Timestamp now =
        Timestamp::from_epoch(static_cast<std::uint32_t>(epoch0_ + event.time));
    const Frame frame = originate_reading(*node.desc, row, value, now, config_.key_spec);
    const auto bytes = encode_frame(frame);

    ++report_.readings_originated;
    const std::uint64_t flight_id = next_flight_++;
    flights_[flight_id] = Flight{node.desc->name, value};

    spend(node, config_.energy.tx_mj_per_byte * static_cast<double>(bytes.size()));
    schedule_depletion_probe(node, event.time);
    forward(event.subject, event.time, bytes, flight_id);

    const auto period = period_.at(row.node_name + "#" + std::to_string(event.schedule_row));
    const auto next = event.time + period;
    if (next <= config_.sim_duration_s) {
        SimEvent repeat{next, EventKind::ReadingDue, event.subject, {}, 0};
        repeat.schedule_row = event.schedule_row;
        push(std::move(repeat));
    }
}

void EventLoop::forward(const std::string& from, std::uint64_t now,
                        std::span<const std::uint8_t> bytes, std::uint64_t flight_id) {
    const auto& next_hop = routes_.at(from);
    SimEvent arrival{now + 1, EventKind::FrameArrival, next_hop,
                     transmit(bytes, config_.noise_bit_flip_prob, rng_), 0};
    arrival.flight = flight_id;
    push(std::move(arrival));
}

void EventLoop::handle_frame_arrival(const SimEvent& event) {
    auto& node = nodes_.at(event.subject);
    const Flight flight = flights_.at(event.flight);
    flights_.erase(event.flight);

    if (!charge_idle(node, event.time)) {
        ++report_.frames_dropped_depleted;
        return;
    }
    if (node.desc->role == Role::Coordinator) {
        spend(node, config_.energy.rx_mj_per_byte * static_cast<double>(event.payload.size()));
        schedule_depletion_probe(node, event.time);
        deliver_to_coordinator(event, flight);
        return;
    }
    // Relay. A passive relay whose radio window is shut never hears the frame.
    if (node.desc->duty_cycle && !node.listening) {
        ++report_.frames_dropped_duty_cycle;
        return;
    }
    spend(node, config_.energy.rx_mj_per_byte * static_cast<double>(event.payload.size()));
    spend(node, config_.energy.tx_mj_per_byte * static_cast<double>(event.payload.size()));
    schedule_depletion_probe(node, event.time);
    flights_[event.flight] = flight; // back in flight
    forward(event.subject, event.time, event.payload, event.flight);
}

void EventLoop::deliver_to_coordinator(const SimEvent& event, const Flight& flight) {
    const auto outcome = coordinator_receive(event.payload, registry_, config_.key_spec);
    if (outcome.status != ReceiveStatus::Delivered) {
        ++report_.readings_corrupted_detected;
        ++report_.detected_by_class[to_string(outcome.status)];
        return;
    }
    const auto& reading = *outcome.reading;
    const bool intact = reading.node_name == flight.origin &&
                        reading.values.size() == 1 && reading.values[0] == flight.value;
    if (intact) {
        ++report_.readings_delivered_intact;
    } else {
        ++report_.readings_corrupted_undetected;
    }
    if (sink_) sink_(reading);
}

SimReport EventLoop::run() {
    validate();
    seed_events();

    std::uint64_t now = 0;
    while (!queue_.empty()) {
        const SimEvent event = queue_.top();
        queue_.pop();
        now = event.time;
        handle(event);
    }

    for (auto& [name, node] : nodes_) {
        charge_idle(node, std::max(now, config_.sim_duration_s));
        report_.energy_remaining_j[name] = node.energy_mj / 1000.0;
        report_.hop_counts[name] =
            node.desc->role == Role::Coordinator
                ? 0
                : route_hops(routes_, name, registry_.coordinator().name);
    }
    return report_;
}

} // namespace

SimReport run_simulation(const SimConfig& config, const Registry& registry,
                         const std::vector<SensorSchedule>& schedule,
                         const std::function<void(const DeliveredReading&)>& gateway_sink) {
    return EventLoop(config, registry, schedule, gateway_sink).run();
}

// ---------------------------------------------------------------------------
// Report formatting

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::string SimReport::to_text() const {
    std::ostringstream out;
    out << "readings\n";
    out << "  originated             " << readings_originated << "\n";
    out << "  delivered intact       " << readings_delivered_intact << "\n";
    out << "  corrupted, detected    " << readings_corrupted_detected << "\n";
    out << "  corrupted, undetected  " << readings_corrupted_undetected << "\n";
    out << "  dropped, duty cycle    " << frames_dropped_duty_cycle << "\n";
    out << "  dropped, depleted      " << frames_dropped_depleted << "\n";
    if (!detected_by_class.empty()) {
        out << "detected failures by class\n";
        for (const auto& [cls, count] : detected_by_class) {
            out << "  " << cls << "  " << count << "\n";
        }
    }
    out << "nodes\n";
    out << "  name  hops  energy-remaining-j\n";
    for (const auto& [name, energy] : energy_remaining_j) {
        out << "  " << name << "  " << hop_counts.at(name) << "  " << fixed6(energy)
            << "\n";
    }
    return out.str();
}

std::string SimReport::to_tsv() const {
    std::ostringstream out;
    out << "readings_originated\t" << readings_originated << "\n";
    out << "readings_delivered_intact\t" << readings_delivered_intact << "\n";
    out << "readings_corrupted_detected\t" << readings_corrupted_detected << "\n";
    out << "readings_corrupted_undetected\t" << readings_corrupted_undetected << "\n";
    out << "frames_dropped_duty_cycle\t" << frames_dropped_duty_cycle << "\n";
    out << "frames_dropped_depleted\t" << frames_dropped_depleted << "\n";
    for (const auto& [cls, count] : detected_by_class) {
        out << "detected." << cls << "\t" << count << "\n";
    }
    for (const auto& [name, energy] : energy_remaining_j) {
        out << "node." << name << ".hops\t" << hop_counts.at(name) << "\n";
        out << "node." << name << ".energy_remaining_j\t" << fixed6(energy) << "\n";
    }
    return out.str();
}

} // namespace wsn
