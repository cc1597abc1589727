#include "wsn/analysis.hpp"

#include <algorithm>
#include <sstream>

#include "wsn/textutil.hpp"

namespace wsn {

AttackResult recover_key_known_plaintext(
    std::span<const std::pair<std::uint8_t, std::uint8_t>> pairs) {
    if (pairs.empty()) throw DomainError("need at least one (plain, cipher) pair");
    // The construction is substitute-then-XOR, so one pair pins the key.
    const KeyByte key = static_cast<KeyByte>(substitute(pairs[0].first) ^ pairs[0].second);
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        const KeyByte other =
            static_cast<KeyByte>(substitute(pairs[i].first) ^ pairs[i].second);
        if (other != key) throw InconsistentPairsError(i);
    }
    AttackResult result;
    result.method = AttackMethod::KnownPlaintext;
    result.recovered_key = key;
    result.candidates = {{key, 1.0}};
    result.trials = pairs.size();
    return result;
}

PlausibilityPredicate value_range(std::uint8_t lo, std::uint8_t hi) {
    return [lo, hi](std::uint8_t v) { return v >= lo && v <= hi; };
}

std::optional<PlausibilityPredicate> plausibility_preset(std::string_view name) {
    if (name == "temperature") return value_range(0, 50);
    if (name == "humidity") return value_range(0, 100);
    if (name == "uv-index") return value_range(0, 11);
    if (name == "any") return value_range(0, 255);
    return std::nullopt;
}

AttackResult exhaustive_search(std::span<const std::uint8_t> ciphertext,
                               const PlausibilityPredicate& plausible) {
    if (ciphertext.empty()) throw DomainError("empty ciphertext");
    AttackResult result;
    result.method = AttackMethod::Exhaustive;
    result.trials = 256;
    result.candidates.reserve(256);
    for (int k = 0; k < 256; ++k) {
        const auto key = static_cast<KeyByte>(k);
        std::size_t hits = 0;
        for (std::uint8_t c : ciphertext) {
            if (plausible(decrypt_byte(c, key))) ++hits;
        }
        result.candidates.emplace_back(
            key, static_cast<double>(hits) / static_cast<double>(ciphertext.size()));
    }
    // Best score first; equal scores stay in key order.
    std::stable_sort(result.candidates.begin(), result.candidates.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return result;
}

namespace {

// Applies `mutate` to a copy of the encoded frame, recomputes the trailing
// checksum, and runs the coordinator receive path. The checksum repair
// models the compensating second bit flip a one-byte XOR checksum cannot
// detect; without it every mutation would die as a checksum mismatch and
// the key-derivation damage would never be observable.
CorruptionRow run_mutation(std::string mutation, std::vector<std::uint8_t> bytes,
                           const std::function<void(std::vector<std::uint8_t>&)>& mutate,
                           const Registry& registry, const KeySpec& spec,
                           std::uint8_t original_value) {
    mutate(bytes);
    bytes.back() = xor_checksum(std::span(bytes).first(bytes.size() - 1));
    const auto outcome = coordinator_receive(bytes, registry, spec);

    CorruptionRow row;
    row.mutation = std::move(mutation);
    row.status = outcome.status;
    if (outcome.status == ReceiveStatus::Delivered) {
        const auto& values = outcome.reading->values;
        row.value = values.size() == 1 ? std::optional(values[0]) : std::nullopt;
        row.value_changed = !(values.size() == 1 && values[0] == original_value);
        if (outcome.frame_spec && outcome.reading) {
            const auto* node = registry.find_by_name(outcome.reading->node_name);
            if (node) {
                row.derived_key =
                    derive_key(*outcome.frame_spec, *node, outcome.reading->timestamp);
            }
        }
    }
    return row;
}

} // namespace

CorruptionStudy flag_corruption_study(const Frame& frame, const KeySpec& spec,
                                      const Registry& registry) {
    if (spec.mode != KeyMode::Timestamp || !spec.valid()) throw WrongModeError();
    const auto frame_spec = decode_flags(frame.flags);
    if (!frame_spec || frame_spec->mode != KeyMode::Timestamp) throw WrongModeError();

    const auto bytes = encode_frame(frame);
    const auto clean = coordinator_receive(bytes, registry, spec);
    if (clean.status != ReceiveStatus::Delivered || clean.reading->values.size() != 1) {
        throw DomainError("study frame does not decrypt cleanly");
    }

    CorruptionStudy study;
    study.original_value = clean.reading->values[0];
    const auto* source = registry.find_by_name(clean.reading->node_name);
    study.original_key = derive_key(*frame_spec, *source, clean.reading->timestamp);

    // Offsets per the frame layout: flags at 3, timestamp at 14..17.
    for (int bit = 7; bit >= 0; --bit) {
        study.rows.push_back(run_mutation(
            "flags bit " + std::to_string(bit), bytes,
            [bit](std::vector<std::uint8_t>& b) {
                b[3] ^= static_cast<std::uint8_t>(1u << bit);
            },
            registry, spec, study.original_value));
    }
    for (TsField other : {TsField::Hours, TsField::Minutes, TsField::Seconds}) {
        if (other == frame_spec->ts_field.value()) continue;
        const auto swapped = encode_flags(KeySpec::timestamp(other));
        study.rows.push_back(run_mutation(
            "ts-field -> " + to_string(KeySpec::timestamp(other)), bytes,
            [swapped](std::vector<std::uint8_t>& b) { b[3] = swapped; }, registry, spec,
            study.original_value));
    }
    for (int bit = 31; bit >= 0; --bit) {
        study.rows.push_back(run_mutation(
            "timestamp bit " + std::to_string(bit), bytes,
            [bit](std::vector<std::uint8_t>& b) {
                b[14 + (3 - bit / 8)] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            },
            registry, spec, study.original_value));
    }

    for (const auto& row : study.rows) {
        if (row.status == ReceiveStatus::Delivered) {
            ++study.accepted;
            if (row.value_changed) ++study.accepted_wrong_value;
        } else {
            ++study.rejected;
        }
    }
    study.undetected_wrong_rate =
        static_cast<double>(study.accepted_wrong_value) /
        static_cast<double>(study.rows.size());
    return study;
}

std::string CorruptionStudy::to_text() const {
    std::ostringstream out;
    out << "original value " << to_hex(original_value, 2) << ", key "
        << to_hex(original_key, 2) << "\n";
    out << "mutation\toutcome\tkey\tvalue\tchanged\n";
    for (const auto& row : rows) {
        out << row.mutation << "\t" << to_string(row.status) << "\t"
            << (row.derived_key ? to_hex(*row.derived_key, 2) : std::string("-")) << "\t"
            << (row.value ? to_hex(*row.value, 2) : std::string("-")) << "\t"
            << (row.status == ReceiveStatus::Delivered ? (row.value_changed ? "yes" : "no")
                                                       : "-")
            << "\n";
    }
    out << "accepted " << accepted << ", rejected " << rejected
        << ", accepted with wrong value " << accepted_wrong_value << " ("
        << static_cast<int>(undetected_wrong_rate * 100.0) << "% of mutations)\n";
    return out.str();
}

} // namespace wsn
