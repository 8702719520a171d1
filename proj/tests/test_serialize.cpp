#include <doctest.h>

#include "deckgroup/parse.hpp"
#include "deckgroup/random.hpp"
#include "deckgroup/serialize.hpp"

using namespace deckgroup;
using nlohmann::json;

TEST_CASE("moebius and sphere point JSON round trip") {
    Rng rng(91);
    for (int i = 0; i < 30; ++i) {
        MoebiusMap m = rng.moebius();
        MoebiusMap back = json(m).get<MoebiusMap>();
        CHECK(maps_equal(m, back, 1e-12));

        SpherePoint p = rng.sphere_point();
        SpherePoint q = json(p).get<SpherePoint>();
        CHECK(chordal_distance(p, q) < 1e-12);
    }
}

TEST_CASE("bicritical map JSON forms") {
    json nf = {{"normal_form",
                {{"alpha", cplx(1.0)}, {"beta", cplx(-1.0)}, {"gamma", cplx(1.0)},
                 {"delta", cplx(0.0, 1.0)}, {"d", 4}}}};
    BicriticalMap f = bicritical_from_json(nf);
    CHECK(f.degree == 4);
    CHECK(points_equal(eval(f, point(1.0)), SpherePoint::zero(), 1e-12));

    BicriticalMap g = bicritical_from_json(json(f));
    for (int i = 0; i < 8; ++i) {
        Rng rng(92 + i);
        SpherePoint p = rng.sphere_point();
        CHECK(points_equal(eval(f, p), eval(g, p), 1e-10));
    }
}

TEST_CASE("classification report JSON carries the spec fields") {
    ClassificationReport report = classify_map(from_normal_form(1.0, -1.0, 1.0, 1.0, 2), 3);
    json j = report;
    CHECK(j.at("degree") == 2);
    CHECK(j.at("power_map") == false);
    CHECK(j.at("critically_coalescing") == true);
    CHECK(j.at("verdict") == "consistent");
    CHECK(j.at("levels").size() == 3);
    CHECK(j.at("levels")[1].at("type") == "D_4");
}

TEST_CASE("deck group JSON includes generators that generate") {
    Tolerance tol;
    BicriticalMap g = from_normal_form(1.0, -1.0, 1.0, 1.0, 2);
    DeckGroup group = deck_group(g, 3, tol);
    GroupType type = identify_group(group.elements, tol);
    json j = deck_group_to_json(group, type, tol);
    CHECK(j.at("order") == 8);
    CHECK(j.at("group_type") == "D_8");
    CHECK(j.at("k") == 3);
    auto gens = j.at("generators").get<std::vector<MoebiusMap>>();
    REQUIRE(gens.size() == 2);
    // closure of the generators reproduces the group
    std::vector<MoebiusMap> span{MoebiusMap::identity()};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const MoebiusMap& a : std::vector<MoebiusMap>(span))
            for (const MoebiusMap& b : gens) {
                MoebiusMap c = compose(a, b);
                if (!contains_map(span, c, tol.eps)) {
                    span.push_back(c);
                    grew = true;
                }
            }
    }
    CHECK(span.size() == group.elements.size());
}

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("1") == cplx(1.0, 0.0));
    CHECK(parse_complex("-2.5") == cplx(-2.5, 0.0));
    CHECK(parse_complex("i") == cplx(0.0, 1.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("3i") == cplx(0.0, 3.0));
    CHECK(parse_complex("1+2i") == cplx(1.0, 2.0));
    CHECK(parse_complex("1.5-0.5i") == cplx(1.5, -0.5));
    CHECK(parse_complex("1e-3+2e-3i") == cplx(1e-3, 2e-3));
    CHECK(parse_complex("[1, -2]") == cplx(1.0, -2.0));
    CHECK_THROWS(parse_complex(""));

    auto list = parse_complex_list("1,-1,1,i");
    REQUIRE(list.size() == 4);
    CHECK(list[3] == cplx(0.0, 1.0));

    auto bracketed = parse_complex_list("[1,0],[0,1]");
    REQUIRE(bracketed.size() == 2);
    CHECK(bracketed[1] == cplx(0.0, 1.0));
}
