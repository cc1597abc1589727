#ifndef WSN_MESHSIM_HPP
#define WSN_MESHSIM_HPP

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wsn/framing.hpp"
#include "wsn/keying.hpp"
#include "wsn/registry.hpp"

namespace wsn {

/// Adjacency list over node names. Edges are undirected; listing a link
/// once is enough.
using Topology = std::map<std::string, std::vector<std::string>>;

/// Informational radio metadata. Carried through to the report, affects
/// nothing in the simulation.
struct RadioParams {
    double frequency_mhz = 2405.0;
    double tx_power_dbm = 5.0;
};

struct EnergyCosts {
    double tx_mj_per_byte = 0.2;
    double rx_mj_per_byte = 0.1;
    double idle_mj_per_s = 0.001;
};

struct SimConfig {
    Topology topology;
    KeySpec key_spec = KeySpec::mac_tail();
    double noise_bit_flip_prob = 0.0;  ///< per transmitted bit, per hop
    double duty_cycle_default = 1.0;   ///< used for passive nodes without an explicit cycle
    std::uint64_t rng_seed = 0;
    std::uint64_t sim_duration_s = 86400;
    std::uint64_t default_period_s = 3600; ///< for sensors with no pending next update
    std::string coordinator_name = "0000";
    std::uint64_t coordinator_mac = 0xDEADBEEFFEEDDADDull;
    RadioParams radio;
    EnergyCosts energy;
    double initial_energy_j = 25.0;
    std::set<std::string> relays;            ///< FFD names; all other table nodes are RFDs
    std::map<std::string, double> passive;   ///< node name -> duty cycle; 0 means "use default"
};

/// Parses the line-oriented `key = value` config format with a [topology]
/// section of `name: neighbor,neighbor,...` lines. '#' starts a comment.
SimConfig parse_config(std::istream& source);
SimConfig load_config(const std::string& path);

/// Builds the registry a config describes: table nodes get their roles and
/// duty cycles, the coordinator is injected from the config.
Registry build_registry(const SimConfig& config, std::vector<NodeDescriptor> table_nodes);

/// Minimum-hop next-hop routing toward the coordinator. Only FFDs (and the
/// coordinator itself) may relay, so RFDs never appear in a path interior.
/// Ties break toward the lexicographically smallest next-hop name. Every
/// topology node except the coordinator gets an entry; a node with no
/// FFD-interior path throws UnreachableError.
std::map<std::string, std::string> build_routes(const Topology& topology,
                                                const std::string& coordinator,
                                                const std::set<std::string>& relays);

/// Number of hops from a node to the coordinator along the routing table.
int route_hops(const std::map<std::string, std::string>& routes,
               const std::string& from, const std::string& coordinator);

/// Builds the frame a node transmits for one sensor reading: the value is
/// encrypted under the node's derived key, header fields come from the
/// node and the current time. The node must own the schedule entry.
Frame originate_reading(const NodeDescriptor& node, const SensorSchedule& sensor,
                        std::uint8_t value, const Timestamp& now, const KeySpec& spec);

/// One channel traversal: each bit flips independently with the given
/// probability. Deterministic for a fixed generator state.
std::vector<std::uint8_t> transmit(std::span<const std::uint8_t> bytes,
                                   double bit_flip_prob, std::mt19937_64& rng);

enum class ReceiveStatus {
    Delivered,
    BadMagic,
    BadVersion,
    TruncatedFrame,
    LengthMismatch,
    ChecksumMismatch,
    ReservedFlags, ///< flags byte uses a reserved pattern
    UnknownSource, ///< source MAC not in the registry
};

std::string to_string(ReceiveStatus status);

/// A reading handed to the gateway sink.
struct DeliveredReading {
    std::string node_name;
    std::vector<std::uint8_t> values; ///< decrypted payload
    Timestamp timestamp;
};

struct ReceiveOutcome {
    ReceiveStatus status = ReceiveStatus::Delivered;
    std::optional<DeliveredReading> reading; ///< set when status is Delivered
    std::optional<KeySpec> frame_spec;       ///< decoded from the frame flags
    bool spec_mismatch = false; ///< frame carried a different key spec than configured
};

/// The coordinator's receive path: deframe, look the source up by MAC,
/// derive the key from the frame's own flags and timestamp, decrypt.
/// Failures are classified outcomes, never exceptions. The expected spec
/// is only compared against the frame's, so a corrupted flag still decrypts
/// the way a real receiver would.
ReceiveOutcome coordinator_receive(std::span<const std::uint8_t> bytes,
                                   const Registry& registry,
                                   const KeySpec& expected_spec);

/// Discrete-event queue entry. Events are processed in nondecreasing time
/// order; ties break by (kind rank, subject name, insertion order).
enum class EventKind {
    NodeDepleted = 0,
    ListenWindowClose = 1,
    ListenWindowOpen = 2,
    ReadingDue = 3,
    FrameArrival = 4,
};

struct SimEvent {
    std::uint64_t time = 0;
    EventKind kind = EventKind::ReadingDue;
    std::string subject;                ///< node the event concerns
    std::vector<std::uint8_t> payload;  ///< frame bytes for FrameArrival
    std::uint64_t seq = 0;              ///< insertion order, final tie-break
    std::uint64_t flight = 0;           ///< in-flight reading id (FrameArrival)
    std::size_t schedule_row = 0;       ///< schedule index (ReadingDue)
};

/// End-of-run accounting. Every originated reading lands in exactly one of
/// the four delivery/corruption/drop buckets:
///   originated = delivered_intact + corrupted_detected + corrupted_undetected
///              + dropped_duty_cycle + dropped_depleted
struct SimReport {
    std::uint64_t readings_originated = 0;
    std::uint64_t readings_delivered_intact = 0;
    std::uint64_t readings_corrupted_detected = 0;
    std::uint64_t readings_corrupted_undetected = 0;
    std::uint64_t frames_dropped_duty_cycle = 0;
    std::uint64_t frames_dropped_depleted = 0;
    std::map<std::string, std::uint64_t> detected_by_class; ///< failure class -> count
    std::map<std::string, double> energy_remaining_j;
    std::map<std::string, int> hop_counts;

    std::string to_text() const;
    std::string to_tsv() const;
};

/// Runs the event loop from time zero (anchored at the earliest pending
/// next-update) until the configured duration, then drains in-flight
/// frames. Deterministic for a fixed seed. Throws ConfigInvalidError on
/// pre-run validation failure; after that, nothing throws.
SimReport run_simulation(const SimConfig& config, const Registry& registry,
                         const std::vector<SensorSchedule>& schedule,
                         const std::function<void(const DeliveredReading&)>& gateway_sink = {});

} // namespace wsn

#endif // WSN_MESHSIM_HPP
