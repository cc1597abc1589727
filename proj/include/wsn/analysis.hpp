#ifndef WSN_ANALYSIS_HPP
#define WSN_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsn/framing.hpp"
#include "wsn/keying.hpp"
#include "wsn/meshsim.hpp"
#include "wsn/registry.hpp"
#include "wsn/sbox.hpp"

namespace wsn {

enum class AttackMethod { KnownPlaintext, Exhaustive, FlagCorruption };

struct AttackResult {
    std::optional<KeyByte> recovered_key;
    /// Candidate keys with plausibility scores, best first; ties in key order.
    std::vector<std::pair<KeyByte, double>> candidates;
    std::size_t trials = 0;
    AttackMethod method = AttackMethod::KnownPlaintext;
};

/// Recovers the key from known (plaintext, ciphertext) pairs. One pair is
/// always enough: key = substitute(plain) ^ cipher. Additional pairs are
/// consistency-checked; a disagreement throws InconsistentPairsError with
/// the offending index (mixed keys or corrupted data).
AttackResult recover_key_known_plaintext(
    std::span<const std::pair<std::uint8_t, std::uint8_t>> pairs);

/// Predicate over decrypted bytes used to rank exhaustive-search candidates.
using PlausibilityPredicate = std::function<bool(std::uint8_t)>;

/// Inclusive byte range predicate. Presets for byte-scaled sensor values:
/// temperature 0-50, humidity 0-100, uv-index 0-11.
PlausibilityPredicate value_range(std::uint8_t lo, std::uint8_t hi);
std::optional<PlausibilityPredicate> plausibility_preset(std::string_view name);

/// Decrypts the ciphertext under all 256 keys and ranks each key by the
/// fraction of decrypted bytes the predicate accepts.
AttackResult exhaustive_search(std::span<const std::uint8_t> ciphertext,
                               const PlausibilityPredicate& plausible);

/// One corruption experiment: a mutation applied to an encoded frame with
/// the checksum recomputed, so the damage reaches the receiver's key
/// derivation instead of dying at the checksum (the two-bit-noise case a
/// one-byte XOR checksum cannot catch).
struct CorruptionRow {
    std::string mutation;    ///< e.g. "flags bit 5", "ts-field -> minutes", "timestamp bit 17"
    ReceiveStatus status;    ///< Delivered or the rejection class
    std::optional<KeyByte> derived_key; ///< receiver-side key when delivered
    std::optional<std::uint8_t> value;  ///< decrypted value when delivered
    bool value_changed = false;         ///< decrypted value differs from the original
};

struct CorruptionStudy {
    std::uint8_t original_value = 0;
    KeyByte original_key = 0;
    std::vector<CorruptionRow> rows;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t accepted_wrong_value = 0;
    /// Fraction of all mutations that were accepted with a wrong value.
    double undetected_wrong_rate = 0.0;

    std::string to_text() const;
};

/// Measures what single-bit damage to the flags byte or the timestamp
/// field does to a timestamp-keyed frame, plus the two selector swaps to
/// the other timestamp fields. Requires a frame the registry can decrypt;
/// throws WrongModeError when the frame is not timestamp-keyed.
CorruptionStudy flag_corruption_study(const Frame& frame, const KeySpec& spec,
                                      const Registry& registry);

} // namespace wsn

#endif // WSN_ANALYSIS_HPP
