#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wsn/analysis.hpp"
#include "wsn/errors.hpp"
#include "wsn/framing.hpp"
#include "wsn/keying.hpp"
#include "wsn/meshsim.hpp"
#include "wsn/registry.hpp"
#include "wsn/sbox.hpp"
#include "wsn/textutil.hpp"

namespace wsn {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

/// Malformed values on the command line: reported like usage errors.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

std::uint8_t parse_byte_arg(const std::string& text, const std::string& what) {
    const auto v = parse_hex(trim(text), 2);
    if (!v) throw UsageError("bad hex byte for " + what + ": \"" + text + "\"");
    return static_cast<std::uint8_t>(*v);
}

KeySpec parse_mode_arg(const std::string& text) {
    const auto spec = parse_key_spec(text);
    if (!spec) {
        throw UsageError("unknown mode \"" + text +
                         "\" (mac|name|ts-hours|ts-minutes|ts-seconds)");
    }
    return *spec;
}

Timestamp parse_ts_arg(const std::string& text) {
    const auto ts = Timestamp::parse(trim(text));
    if (!ts) throw UsageError("bad timestamp \"" + text + "\" (want YYYY-MM-DD HH:MM:SS)");
    return *ts;
}

std::vector<NodeDescriptor> load_nodes_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open node table " + path);
    return load_nodes(in);
}

std::vector<SensorSchedule> load_schedule_file(const std::string& path,
                                               const std::vector<NodeDescriptor>& nodes) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open schedule " + path);
    return load_schedule(in, nodes);
}

const NodeDescriptor& require_node(const std::vector<NodeDescriptor>& nodes,
                                   const std::string& name) {
    for (const auto& node : nodes) {
        if (node.name == name) return node;
    }
    throw DomainError("unknown node " + name);
}

// Shared by encrypt and decrypt: resolve the key byte for a node under a
// mode, demanding a timestamp exactly when the mode needs one.
struct KeyArgs {
    std::string value;
    std::string node;
    std::string mode;
    std::string ts;
    std::string nodes_path = "data/nodes.tsv";

    void attach(CLI::App& cmd) {
        cmd.add_option("--value", value, "hex byte, no 0x prefix")->required();
        cmd.add_option("--node", node, "source node name (4 hex digits)")->required();
        cmd.add_option("--mode", mode, "mac|name|ts-hours|ts-minutes|ts-seconds")
            ->required();
        cmd.add_option("--ts", ts, "timestamp YYYY-MM-DD HH:MM:SS (timestamp modes)");
        cmd.add_option("--nodes", nodes_path, "node table path");
    }

    std::pair<KeyByte, KeySpec> resolve() const {
        const KeySpec spec = parse_mode_arg(mode);
        if (spec.mode == KeyMode::Timestamp && ts.empty()) {
            throw UsageError("--mode " + mode + " requires --ts");
        }
        const Timestamp when = ts.empty() ? Timestamp{} : parse_ts_arg(ts);
        const auto nodes = load_nodes_file(nodes_path);
        return {derive_key(spec, require_node(nodes, node), when), spec};
    }
};

void print_grid(std::ostream& out, const std::array<std::uint8_t, 256>& table,
                const std::string& title) {
    out << title << "\n";
    out << "   ";
    for (int col = 0; col < 16; ++col) out << " " << to_hex(col, 1) << " ";
    out << "\n";
    for (int row = 0; row < 16; ++row) {
        out << " " << to_hex(row, 1) << " ";
        for (int col = 0; col < 16; ++col) {
            out << " " << to_hex(table[row * 16 + col], 2);
        }
        out << "\n";
    }
}

int cmd_dump_sbox(std::ostream& out) {
    print_grid(out, kSBoxForward, "forward");
    print_grid(out, kSBoxInverse, "inverse");
    return kExitOk;
}

int cmd_validate(std::ostream& out, const std::string& nodes_path,
                 const std::string& schedule_path) {
    const auto nodes = load_nodes_file(nodes_path);
    const auto schedule = load_schedule_file(schedule_path, nodes);
    std::size_t pending = 0;
    std::set<std::string> scheduled_nodes;
    for (const auto& row : schedule) {
        if (row.next_update) ++pending;
        scheduled_nodes.insert(row.node_name);
    }
    out << "nodes: " << nodes.size() << "\n";
    out << "schedule rows: " << schedule.size() << " (" << pending
        << " with a pending update)\n";
    out << "nodes with sensors: " << scheduled_nodes.size() << "\n";
    out << "ok\n";
    return kExitOk;
}

int cmd_simulate(std::ostream& out, const std::string& config_path,
                 const std::string& nodes_path, const std::string& schedule_path,
                 const std::string& format, std::optional<std::uint64_t> seed) {
    SimConfig config = load_config(config_path);
    if (seed) config.rng_seed = *seed;
    const auto nodes = load_nodes_file(nodes_path);
    const auto registry = build_registry(config, nodes);
    const auto schedule = load_schedule_file(schedule_path, nodes);
    const SimReport report = run_simulation(config, registry, schedule);
    if (format == "tsv") {
        out << report.to_tsv();
    } else if (format == "human") {
        out << report.to_text();
    } else {
        throw UsageError("unknown format \"" + format + "\" (human|tsv)");
    }
    return kExitOk;
}

int cmd_attack_known_plaintext(std::ostream& out, const std::string& pairs_text) {
    std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
    for (auto part : split(pairs_text, ',')) {
        const auto entry = trim(part);
        if (entry.empty()) continue;
        const auto colon = entry.find(':');
        if (colon == std::string_view::npos) {
            throw UsageError("pair \"" + std::string(entry) + "\" is not plain:cipher");
        }
        pairs.emplace_back(parse_byte_arg(std::string(entry.substr(0, colon)), "--pairs"),
                           parse_byte_arg(std::string(entry.substr(colon + 1)), "--pairs"));
    }
    if (pairs.empty()) throw UsageError("--pairs needs at least one plain:cipher entry");
    const auto result = recover_key_known_plaintext(pairs);
    out << "key " << to_hex(*result.recovered_key, 2) << " (from " << result.trials
        << (result.trials == 1 ? " pair)" : " pairs)") << "\n";
    return kExitOk;
}

int cmd_attack_exhaustive(std::ostream& out, const std::string& cipher_text,
                          const std::string& range_text, const std::string& preset,
                          std::size_t top) {
    const auto cipher = parse_hex_bytes(cipher_text);
    if (!cipher || cipher->empty()) throw UsageError("--cipher needs hex bytes");

    PlausibilityPredicate predicate = value_range(0, 255);
    if (!preset.empty()) {
        const auto p = plausibility_preset(preset);
        if (!p) {
            throw UsageError("unknown preset \"" + preset +
                             "\" (temperature|humidity|uv-index|any)");
        }
        predicate = *p;
    } else if (!range_text.empty()) {
        const auto colon = range_text.find(':');
        unsigned lo = 0;
        unsigned hi = 0;
        if (colon == std::string::npos ||
            std::sscanf(range_text.c_str(), "%u:%u", &lo, &hi) != 2 || lo > hi ||
            hi > 255) {
            throw UsageError("--range wants LO:HI decimal bytes, e.g. 0:50");
        }
        predicate = value_range(static_cast<std::uint8_t>(lo), static_cast<std::uint8_t>(hi));
    }

    const auto result = exhaustive_search(*cipher, predicate);
    out << "key\tscore\n";
    for (std::size_t i = 0; i < result.candidates.size() && i < top; ++i) {
        char score[32];
        std::snprintf(score, sizeof score, "%.4f", result.candidates[i].second);
        out << to_hex(result.candidates[i].first, 2) << "\t" << score << "\n";
    }
    return kExitOk;
}

int cmd_attack_flag_study(std::ostream& out, const std::string& node_name,
                          const std::string& ts_text, const std::string& field,
                          const std::string& value_text, const std::string& nodes_path) {
    const KeySpec spec = parse_mode_arg("ts-" + field);
    const Timestamp when = parse_ts_arg(ts_text);
    const std::uint8_t value = parse_byte_arg(value_text, "--value");
    const auto nodes = load_nodes_file(nodes_path);
    const auto& node = require_node(nodes, node_name);

    SimConfig config; // defaults are enough for a one-frame registry
    const auto registry = build_registry(config, nodes);
    SensorSchedule sensor;
    sensor.node_name = node.name;
    sensor.sensor_id = 1;
    const Frame frame = originate_reading(node, sensor, value, when, spec);
    out << flag_corruption_study(frame, spec, registry).to_text();
    return kExitOk;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sensor-mesh security protocol toolkit"};
    app.require_subcommand(1);

    // encrypt / decrypt
    KeyArgs enc_args;
    auto* enc = app.add_subcommand("encrypt", "encrypt one value byte for a node");
    enc_args.attach(*enc);
    KeyArgs dec_args;
    auto* dec = app.add_subcommand("decrypt", "decrypt one cipher byte for a node");
    dec_args.attach(*dec);

    auto* dump = app.add_subcommand("dump-sbox", "print the substitution tables");

    auto* validate = app.add_subcommand("validate", "check the node and schedule files");
    std::string val_nodes = "data/nodes.tsv";
    std::string val_schedule = "data/schedule.tsv";
    validate->add_option("--nodes", val_nodes, "node table path");
    validate->add_option("--schedule", val_schedule, "schedule path");

    auto* simulate = app.add_subcommand("simulate", "run the mesh simulation");
    std::string sim_config;
    std::string sim_nodes = "data/nodes.tsv";
    std::string sim_schedule = "data/schedule.tsv";
    std::string sim_format = "human";
    std::optional<std::uint64_t> sim_seed;
    simulate->add_option("--config", sim_config, "simulation config path")->required();
    simulate->add_option("--nodes", sim_nodes, "node table path");
    simulate->add_option("--schedule", sim_schedule, "schedule path");
    simulate->add_option("--format", sim_format, "human|tsv");
    simulate->add_option("--seed", sim_seed, "override the config rng seed");

    auto* attack = app.add_subcommand("attack", "cryptanalysis of the cipher");
    attack->require_subcommand(1);
    auto* kp = attack->add_subcommand("known-plaintext", "recover the key from pairs");
    std::string kp_pairs;
    kp->add_option("--pairs", kp_pairs, "comma-separated plain:cipher hex pairs")
        ->required();
    auto* ex = attack->add_subcommand("exhaustive", "rank all 256 keys");
    std::string ex_cipher;
    std::string ex_range;
    std::string ex_preset;
    std::size_t ex_top = 10;
    ex->add_option("--cipher", ex_cipher, "ciphertext hex bytes")->required();
    ex->add_option("--range", ex_range, "plausible plaintext range LO:HI (decimal)");
    ex->add_option("--preset", ex_preset, "temperature|humidity|uv-index|any");
    ex->add_option("--top", ex_top, "candidates to print");
    auto* fs = attack->add_subcommand("flag-study", "bit-corruption study on a frame");
    std::string fs_node;
    std::string fs_ts;
    std::string fs_field = "seconds";
    std::string fs_value = "D5";
    std::string fs_nodes = "data/nodes.tsv";
    fs->add_option("--node", fs_node, "source node name")->required();
    fs->add_option("--ts", fs_ts, "frame timestamp YYYY-MM-DD HH:MM:SS")->required();
    fs->add_option("--field", fs_field, "hours|minutes|seconds");
    fs->add_option("--value", fs_value, "plaintext hex byte");
    fs->add_option("--nodes", fs_nodes, "node table path");

    try {
        std::vector<const char*> argv{"wsn"};
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*enc) {
            const auto [key, spec] = enc_args.resolve();
            out << to_hex(encrypt_byte(parse_byte_arg(enc_args.value, "--value"), key), 2)
                << "\n";
            out << to_hex(encode_flags(spec), 2) << "\n";
            return kExitOk;
        }
        if (*dec) {
            const auto [key, spec] = dec_args.resolve();
            out << to_hex(decrypt_byte(parse_byte_arg(dec_args.value, "--value"), key), 2)
                << "\n";
            out << to_hex(encode_flags(spec), 2) << "\n";
            return kExitOk;
        }
        if (*dump) return cmd_dump_sbox(out);
        if (*validate) return cmd_validate(out, val_nodes, val_schedule);
        if (*simulate) {
            return cmd_simulate(out, sim_config, sim_nodes, sim_schedule, sim_format,
                                sim_seed);
        }
        if (*attack) {
            if (*kp) return cmd_attack_known_plaintext(out, kp_pairs);
            if (*ex) return cmd_attack_exhaustive(out, ex_cipher, ex_range, ex_preset, ex_top);
            if (*fs) return cmd_attack_flag_study(out, fs_node, fs_ts, fs_field, fs_value,
                                                  fs_nodes);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    err << "error: no subcommand\n";
    return kExitUsage;
}

} // namespace wsn
