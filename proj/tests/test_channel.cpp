#include "macsim/channel.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace macsim;

namespace {

OutboundMessage packet(Station s, PacketId p, bool big = false) {
    return OutboundMessage{s, p, big};
}

}  // namespace

TEST_CASE("single clear transmission is heard on every channel variant") {
    for (bool jam_cap : {false, true})
        for (bool cd : {false, true}) {
            ChannelConfig config{4, jam_cap, cd};
            Feedback fb = resolve_round({packet(3, 7)}, false, config);
            CHECK(fb.kind == FeedbackKind::Heard);
            CHECK(fb.message.sender == 3);
            CHECK(fb.message.payload == 7);
        }
}

TEST_CASE("no transmission and no jam is silence") {
    ChannelConfig config{2, false, false};
    CHECK(resolve_round({}, false, config).kind == FeedbackKind::Silence);
}

TEST_CASE("collision perception depends on collision detection") {
    ChannelConfig no_cd{4, false, false};
    ChannelConfig cd{4, false, true};
    std::vector<OutboundMessage> two = {packet(0, 1), packet(1, 2)};
    CHECK(resolve_round(two, false, no_cd).kind == FeedbackKind::Silence);
    CHECK(resolve_round(two, false, cd).kind == FeedbackKind::Collision);
}

TEST_CASE("jamming makes the round void, collision signal only with detection") {
    ChannelConfig no_cd{4, true, false};
    ChannelConfig cd{4, true, true};
    CHECK(resolve_round({packet(0, 1)}, true, no_cd).kind == FeedbackKind::Silence);
    CHECK(resolve_round({packet(0, 1)}, true, cd).kind == FeedbackKind::Collision);
    // A jammed round without transmissions is still indistinguishable
    // from a collision when detection is available.
    CHECK(resolve_round({}, true, cd).kind == FeedbackKind::Collision);
    CHECK(resolve_round({}, true, no_cd).kind == FeedbackKind::Silence);
}

TEST_CASE("duplicate sender and invalid preconditions are rejected") {
    ChannelConfig config{4, false, false};
    CHECK_THROWS_AS(resolve_round({packet(2, 1), packet(2, 5)}, false, config),
                    std::invalid_argument);
    CHECK_THROWS_AS(resolve_round({packet(9, 1)}, false, config), std::invalid_argument);
    CHECK_THROWS_AS(resolve_round({}, true, config), std::invalid_argument);
}

TEST_CASE("canonical line format") {
    RoundRecord rec;
    rec.round = 4;
    rec.transmitters = {packet(1, 12), OutboundMessage{3, std::nullopt, false}};
    rec.jammed = true;
    rec.feedback = Feedback::silence();
    rec.injections = {Injection{0, 13}, Injection{2, 14}};
    CHECK(canonical_line(rec) == "4;1:12,3:-;1;S;0:13,2:14");

    RoundRecord heard;
    heard.round = 0;
    heard.transmitters = {packet(2, 9, true)};
    heard.feedback = Feedback::heard(packet(2, 9, true));
    CHECK(canonical_line(heard) == "0;2:9!;0;H:9!;");

    RoundRecord empty;
    empty.round = 7;
    empty.feedback = Feedback::silence();
    CHECK(canonical_line(empty) == "7;;0;S;");
}
