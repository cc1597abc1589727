#include <doctest.h>

#include <algorithm>
#include <utility>
#include <vector>

#include "wsn/analysis.hpp"
#include "wsn/errors.hpp"

using namespace wsn;

namespace {

Registry worked_example_registry() {
    auto nodes = load_nodes_text(
        "name\tlocation\tmac\tshort\n0008\tCar Park\t0008000800080008\t0008\n");
    NodeDescriptor coord;
    coord.name = "0000";
    coord.mac = 0xDEADBEEFFEEDDADDull;
    return Registry::assemble(std::move(nodes), std::move(coord), {}, {});
}

Frame study_frame(TsField field, const char* ts_text = "2015-10-18 04:04:57") {
    const auto nodes = load_nodes_text(
        "name\tlocation\tmac\tshort\n0008\tCar Park\t0008000800080008\t0008\n");
    SensorSchedule sensor;
    sensor.node_name = "0008";
    sensor.sensor_id = 1;
    return originate_reading(nodes[0], sensor, 0xD5, *Timestamp::parse(ts_text),
                             KeySpec::timestamp(field));
}

} // namespace

TEST_CASE("one known pair recovers the key") {
    const std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs = {{0xD5, 0x0B}};
    const auto result = recover_key_known_plaintext(pairs);
    CHECK(result.recovered_key == 0x08);
    CHECK(result.trials == 1);
    CHECK(result.method == AttackMethod::KnownPlaintext);
    REQUIRE(result.candidates.size() == 1);
    CHECK(result.candidates[0].first == 0x08);
}

TEST_CASE("consistent extra pairs confirm the key") {
    const std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs = {
        {0xD5, encrypt_byte(0xD5, 0x42)},
        {0x00, encrypt_byte(0x00, 0x42)},
        {0xFF, encrypt_byte(0xFF, 0x42)}};
    CHECK(recover_key_known_plaintext(pairs).recovered_key == 0x42);
}

TEST_CASE("mixed-key pairs are flagged with the offending index") {
    const std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs = {{0xD5, 0x0B},
                                                                      {0x00, 0x63}};
    try {
        recover_key_known_plaintext(pairs);
        FAIL("expected InconsistentPairsError");
    } catch (const InconsistentPairsError& e) {
        CHECK(e.index() == 1); // second pair implies key 00, not 08
    }
    const std::vector<std::pair<std::uint8_t, std::uint8_t>> none;
    CHECK_THROWS_AS(recover_key_known_plaintext(none), DomainError);
}

TEST_CASE("recovery works across a sample of the whole key space") {
    for (int p = 0; p < 256; p += 17) {
        for (int k = 0; k < 256; ++k) {
            const auto plain = static_cast<std::uint8_t>(p);
            const auto key = static_cast<KeyByte>(k);
            const std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs = {
                {plain, encrypt_byte(plain, key)}};
            REQUIRE(recover_key_known_plaintext(pairs).recovered_key == key);
        }
    }
}

TEST_CASE("exhaustive search with a vacuous predicate ties every key") {
    const std::vector<std::uint8_t> cipher = {0x0B};
    const auto result = exhaustive_search(cipher, value_range(0, 255));
    CHECK(result.trials == 256);
    REQUIRE(result.candidates.size() == 256);
    bool found = false;
    for (const auto& [key, score] : result.candidates) {
        CHECK(score == 1.0);
        if (key == 0x08) {
            found = true;
            CHECK(decrypt_byte(0x0B, key) == 0xD5);
        }
    }
    CHECK(found);
}

TEST_CASE("exhaustive search ranks the true key first on constrained data") {
    // 32 plaintexts spread over 0x10..0x2F, encrypted under 0x19; only the
    // true key decrypts all of them back into the plausible window
    std::vector<std::uint8_t> cipher;
    for (int p = 0x10; p < 0x30; ++p) {
        cipher.push_back(encrypt_byte(static_cast<std::uint8_t>(p), 0x19));
    }
    const auto result = exhaustive_search(cipher, value_range(0x10, 0x30));
    REQUIRE(!result.candidates.empty());
    CHECK(result.candidates[0].first == 0x19);
    CHECK(result.candidates[0].second == 1.0);
    CHECK(result.candidates[1].second < 1.0);
}

TEST_CASE("a predicate with no hits scores everything zero") {
    const std::vector<std::uint8_t> cipher = {0x0B, 0x12, 0x99};
    const auto result = exhaustive_search(cipher, [](std::uint8_t) { return false; });
    for (const auto& [key, score] : result.candidates) CHECK(score == 0.0);
    CHECK_THROWS_AS(exhaustive_search({}, value_range(0, 255)), DomainError);
}

TEST_CASE("plausibility presets cover the advertised ranges") {
    const auto temperature = plausibility_preset("temperature");
    REQUIRE(temperature.has_value());
    CHECK((*temperature)(0));
    CHECK((*temperature)(50));
    CHECK(!(*temperature)(51));
    const auto uv = plausibility_preset("uv-index");
    REQUIRE(uv.has_value());
    CHECK((*uv)(11));
    CHECK(!(*uv)(12));
    CHECK(plausibility_preset("humidity").has_value());
    CHECK(!plausibility_preset("wind").has_value());
}

TEST_CASE("corruption study enumerates flags, selector swaps and timestamp bits") {
    const auto registry = worked_example_registry();
    const auto spec = KeySpec::timestamp(TsField::Seconds);
    const auto study = flag_corruption_study(study_frame(TsField::Seconds), spec, registry);

    CHECK(study.rows.size() == 8 + 2 + 32);
    CHECK(study.original_value == 0xD5);
    CHECK(study.original_key == 0x39); // 57 seconds
    CHECK(study.accepted + study.rejected == study.rows.size());
    CHECK(study.accepted_wrong_value > 0);
    CHECK(study.undetected_wrong_rate > 0.0);
}

TEST_CASE("flips into the reserved low nibble are rejected") {
    const auto registry = worked_example_registry();
    const auto spec = KeySpec::timestamp(TsField::Seconds);
    const auto study = flag_corruption_study(study_frame(TsField::Seconds), spec, registry);
    for (int bit = 0; bit <= 3; ++bit) {
        const auto label = "flags bit " + std::to_string(bit);
        const auto row = std::find_if(study.rows.begin(), study.rows.end(),
                                      [&](const auto& r) { return r.mutation == label; });
        REQUIRE(row != study.rows.end());
        CHECK(row->status == ReceiveStatus::ReservedFlags);
    }
}

TEST_CASE("seconds-to-minutes damage yields a wrong value at 04:04:57") {
    const auto registry = worked_example_registry();
    const auto spec = KeySpec::timestamp(TsField::Seconds);
    const auto study = flag_corruption_study(study_frame(TsField::Seconds), spec, registry);
    const auto row = std::find_if(study.rows.begin(), study.rows.end(), [](const auto& r) {
        return r.mutation == "ts-field -> ts-minutes";
    });
    REQUIRE(row != study.rows.end());
    CHECK(row->status == ReceiveStatus::Delivered);
    CHECK(row->derived_key == 0x04); // minutes
    CHECK(row->value_changed);
    CHECK(row->value != 0xD5);
}

TEST_CASE("hours-to-minutes damage is invisible when the fields coincide") {
    // 04:04:57 has equal hours and minutes, so the key is unchanged
    const auto registry = worked_example_registry();
    const auto spec = KeySpec::timestamp(TsField::Hours);
    const auto study = flag_corruption_study(study_frame(TsField::Hours), spec, registry);
    const auto row = std::find_if(study.rows.begin(), study.rows.end(), [](const auto& r) {
        return r.mutation == "ts-field -> ts-minutes";
    });
    REQUIRE(row != study.rows.end());
    CHECK(row->status == ReceiveStatus::Delivered);
    CHECK(row->derived_key == 0x04);
    CHECK(!row->value_changed);
    CHECK(row->value == 0xD5);
}

TEST_CASE("value changes exactly when the derived key changes") {
    const auto registry = worked_example_registry();
    for (TsField field : {TsField::Hours, TsField::Minutes, TsField::Seconds}) {
        const auto spec = KeySpec::timestamp(field);
        const auto study = flag_corruption_study(study_frame(field), spec, registry);
        for (const auto& row : study.rows) {
            if (row.status != ReceiveStatus::Delivered) continue;
            REQUIRE(row.derived_key.has_value());
            CHECK(row.value_changed == (*row.derived_key != study.original_key));
        }
    }
}

TEST_CASE("the study demands a timestamp-keyed frame") {
    const auto registry = worked_example_registry();
    const auto nodes = load_nodes_text(
        "name\tlocation\tmac\tshort\n0008\tCar Park\t0008000800080008\t0008\n");
    SensorSchedule sensor;
    sensor.node_name = "0008";
    sensor.sensor_id = 1;
    const Frame mac_frame =
        originate_reading(nodes[0], sensor, 0xD5,
                          *Timestamp::parse("2015-10-18 04:04:57"), KeySpec::mac_tail());
    CHECK_THROWS_AS(flag_corruption_study(mac_frame, KeySpec::mac_tail(), registry),
                    WrongModeError);
}

TEST_CASE("study output renders one row per mutation") {
    const auto registry = worked_example_registry();
    const auto spec = KeySpec::timestamp(TsField::Seconds);
    const auto study = flag_corruption_study(study_frame(TsField::Seconds), spec, registry);
    const auto text = study.to_text();
    CHECK(text.find("flags bit 7") != std::string::npos);
    CHECK(text.find("ts-field -> ts-minutes") != std::string::npos);
    CHECK(text.find("timestamp bit 31") != std::string::npos);
}
