#include <doctest.h>

#include <cmath>

#include "deckgroup/deck.hpp"
#include "deckgroup/oracle.hpp"
#include "deckgroup/sampling.hpp"

using namespace deckgroup;

namespace {

const cplx kI(0.0, 1.0);

bool same_element_set(const std::vector<MoebiusMap>& a, const std::vector<MoebiusMap>& b,
                      double eps) {
    if (a.size() != b.size()) return false;
    for (const MoebiusMap& g : a)
        if (!contains_map(b, g, eps)) return false;
    return true;
}

MoebiusMap rotation(int n, int j = 1) {
    double theta = 2.0 * M_PI * j / n;
    return MoebiusMap::scaling(cplx(std::cos(theta), std::sin(theta)));
}

} // namespace

TEST_CASE("base deck of z^3 is the rotation group of order 3") {
    BicriticalMap f = from_normal_form(1.0, 0.0, 0.0, 1.0, 3);
    std::vector<MoebiusMap> deck = base_deck(f);
    REQUIRE(deck.size() == 3);
    CHECK(contains_map(deck, MoebiusMap::identity(), 1e-9));
    CHECK(contains_map(deck, rotation(3, 1), 1e-9));
    CHECK(contains_map(deck, rotation(3, 2), 1e-9));
}

TEST_CASE("base deck of (z^2-1)/(z^2+1) is {z, -z}") {
    BicriticalMap g = from_normal_form(1.0, -1.0, 1.0, 1.0, 2);
    std::vector<MoebiusMap> deck = base_deck(g);
    REQUIRE(deck.size() == 2);
    CHECK(contains_map(deck, MoebiusMap::identity(), 1e-9));
    CHECK(contains_map(deck, MoebiusMap::scaling(-1.0), 1e-9));
    // non-identity elements fix exactly the critical points
    FixedPointSet fix = fixed_points(deck[1]);
    CHECK(pairs_equal(PointPair{fix.points[0], fix.points[1]}, critical_points(g), 1e-9));
}

TEST_CASE("base deck elements satisfy f o phi = f for conjugated maps") {
    Rng rng(71);
    BicriticalMap f(MoebiusMap::inversion(), 3, rng.moebius());
    for (const MoebiusMap& phi : base_deck(f)) {
        for (int i = 0; i < 24; ++i) {
            SpherePoint p = rng.sphere_point();
            CHECK(chordal_distance(eval(f, phi.apply(p)), eval(f, p)) < 1e-9);
        }
    }
}

TEST_CASE("lift of a rotation through z^d") {
    cplx a(2.0, 1.0);
    BicriticalMap g = from_normal_form(1.0, 0.0, 0.0, 1.0, 3);
    std::vector<MoebiusMap> lifts = lift(g, MoebiusMap::scaling(a));
    REQUIRE(lifts.size() == 3);
    cplx c = std::pow(a, 1.0 / 3.0);
    for (int j = 0; j < 3; ++j) {
        cplx root = c * std::exp(cplx(0.0, 2.0 * M_PI * j / 3.0));
        CHECK(contains_map(lifts, MoebiusMap::scaling(root), 1e-9));
    }
}

TEST_CASE("lift of an inverting map through z^d") {
    cplx a(0.5, -1.5);
    BicriticalMap g = from_normal_form(1.0, 0.0, 0.0, 1.0, 2);
    // mu = a/z swaps the critical values of z^2
    std::vector<MoebiusMap> lifts = lift(g, MoebiusMap(0.0, a, 1.0, 0.0));
    REQUIRE(lifts.size() == 2);
    for (const MoebiusMap& phi : lifts) {
        // each lift has the shape c/z
        CHECK(std::abs(phi.a) < 1e-9);
        CHECK(std::abs(phi.d) < 1e-9);
    }
}

TEST_CASE("lift reproduces the paper's dihedral seed for (z^2-1)/(z^2+1)") {
    BicriticalMap g = from_normal_form(1.0, -1.0, 1.0, 1.0, 2);
    std::vector<MoebiusMap> lifts = lift(g, MoebiusMap::scaling(-1.0));
    REQUIRE(lifts.size() == 2);
    CHECK(contains_map(lifts, MoebiusMap::inversion(), 1e-9));
    CHECK(contains_map(lifts, MoebiusMap(0.0, -1.0, 1.0, 0.0), 1e-9));
}

TEST_CASE("lift rejects maps that move the value pair") {
    BicriticalMap f = from_normal_form(1.0, -1.0, 1.0, kI, 4);
    CHECK_THROWS_AS(lift(f, MoebiusMap::scaling(-1.0)), value_set_not_preserved_error);
}

TEST_CASE("project fixtures") {
    BicriticalMap sq = from_normal_form(1.0, 0.0, 0.0, 1.0, 2);
    // f = z^2, phi = iz in Deck(f^2) projects to -z
    MoebiusMap mu = project(sq, MoebiusMap::scaling(kI), 2);
    CHECK(maps_equal(mu, MoebiusMap::scaling(-1.0), 1e-8));
    // deck elements project to the identity
    CHECK(is_identity(project(sq, MoebiusMap::scaling(-1.0), 2), 1e-8));
}

TEST_CASE("lift and project are inverse up to the Deck(f) coset") {
    Tolerance tol;
    // coalescing map: -z swaps the critical values -1 and 1, so it lifts
    BicriticalMap g = from_normal_form(1.0, -1.0, 1.0, 1.0, 2);
    std::vector<MoebiusMap> preserving =
        value_preserving_subset(base_deck(g), critical_values(g), tol.eps);
    REQUIRE(preserving.size() == 2);
    int lift_count = 0;
    for (const MoebiusMap& mu : preserving) {
        for (const MoebiusMap& phi : lift(g, mu, tol)) {
            CHECK(maps_equal(project(g, phi, 2, tol), mu, 1e-7));
            ++lift_count;
        }
    }
    CHECK(lift_count == 4);

    // power map: every rotation preserves {0, inf}
    BicriticalMap cube = from_normal_form(1.0, 0.0, 0.0, 1.0, 3);
    for (const MoebiusMap& mu : base_deck(cube))
        for (const MoebiusMap& phi : lift(cube, mu, tol))
            CHECK(maps_equal(project(cube, phi, 2, tol), mu, 1e-7));
}

TEST_CASE("deck group of the paper's quartic example stays Z_4") {
    BicriticalMap f = from_normal_form(1.0, -1.0, 1.0, kI, 4);
    DeckChain chain = compute_deck_chain(f, 2);
    CHECK(chain.groups[0].elements.size() == 4);
    CHECK(chain.groups[1].elements.size() == 4);
    CHECK(same_element_set(chain.groups[1].elements, base_deck(f), 1e-9));
    CHECK(chain.stabilized_at == 1);
}

TEST_CASE("deck group of (z^d-a)/(z^d+a) doubles at the second iterate") {
    for (int d : {2, 4}) {
        BicriticalMap f = from_normal_form(1.0, -2.0, 1.0, 2.0, d);
        DeckGroup g2 = deck_group(f, 2);
        CHECK(static_cast<int>(g2.elements.size()) == 2 * d);
        CHECK(g2.new_elements_count == d);
    }
}

TEST_CASE("deck group of a power map is the full rotation group") {
    BicriticalMap f = from_normal_form(1.0, 0.0, 0.0, 1.0, 3);
    DeckGroup g3 = deck_group(f, 3);
    REQUIRE(g3.elements.size() == 27);
    for (int j = 0; j < 27; ++j) CHECK(contains_map(g3.elements, rotation(27, j), 1e-9));
}

TEST_CASE("deck chain of (z^2-1)/(z^2+1) grows 2, 4, 8 and stabilizes") {
    BicriticalMap g = from_normal_form(1.0, -1.0, 1.0, 1.0, 2);
    DeckChain chain = compute_deck_chain(g, 4);
    REQUIRE(chain.groups.size() == 4);
    CHECK(chain.groups[0].elements.size() == 2);
    CHECK(chain.groups[1].elements.size() == 4);
    CHECK(chain.groups[2].elements.size() == 8);
    CHECK(chain.groups[3].elements.size() == 8);
    CHECK(chain.stabilized_at == 3);
    CHECK(same_element_set(chain.groups[2].elements, chain.groups[3].elements, 1e-9));
}

TEST_CASE("size law: |Deck(f^k)| = d * |value-preserving subset one level down|") {
    Tolerance tol;
    for (auto [alpha, d] : {std::pair<cplx, int>{-1.0, 2}, {-2.0, 4}}) {
        BicriticalMap f = from_normal_form(1.0, alpha, 1.0, -alpha, d);
        DeckChain chain = compute_deck_chain(f, 3, tol);
        PointPair v = critical_values(f);
        for (std::size_t i = 1; i < chain.groups.size(); ++i) {
            std::size_t preserved =
                value_preserving_subset(chain.groups[i - 1].elements, v, tol.eps).size();
            CHECK(chain.groups[i].elements.size() == f.degree * preserved);
        }
    }
}

TEST_CASE("value_preserving_subset fixtures") {
    BicriticalMap cube = from_normal_form(1.0, 0.0, 0.0, 1.0, 3);
    PointPair v{point(1.0), point(kI)};
    std::vector<MoebiusMap> kept = value_preserving_subset(base_deck(cube), v);
    REQUIRE(kept.size() == 1);
    CHECK(is_identity(kept[0], 1e-9));

    BicriticalMap f = from_normal_form(1.0, -2.0, 1.0, 2.0, 2);
    std::vector<MoebiusMap> kept2 =
        value_preserving_subset(base_deck(f), critical_values(f));
    REQUIRE(kept2.size() == 2);
    CHECK(contains_map(kept2, MoebiusMap::scaling(-1.0), 1e-9));

    // V = C_f: the whole group preserves it
    CHECK(value_preserving_subset(base_deck(cube), critical_points(cube)).size() == 3);
}

TEST_CASE("gamma group fixtures") {
    // C = {0, inf}, V = {-1, 1}: the full V_4
    BicriticalMap g = from_normal_form(1.0, -1.0, 1.0, 1.0, 2);
    std::vector<MoebiusMap> gamma = gamma_group(g);
    REQUIRE(gamma.size() == 4);
    CHECK(contains_map(gamma, MoebiusMap::scaling(-1.0), 1e-9));
    CHECK(contains_map(gamma, MoebiusMap::inversion(), 1e-9));
    CHECK(contains_map(gamma, MoebiusMap(0.0, -1.0, 1.0, 0.0), 1e-9));
    for (const MoebiusMap& a : gamma)
        for (const MoebiusMap& b : gamma)
            CHECK(contains_map(gamma, compose(a, b), 1e-8));

    // C = {0, inf}, V = {1, i}: only the swap-both involution i/z survives
    BicriticalMap f = from_normal_form(1.0, -1.0, 1.0, kI, 4);
    std::vector<MoebiusMap> gamma_f = gamma_group(f);
    REQUIRE(gamma_f.size() == 2);
    CHECK(contains_map(gamma_f, MoebiusMap(0.0, kI, 1.0, 0.0), 1e-9));

    // |C u V| = 3: z^2/(z^2+1) shares the critical point 0 with its values
    BicriticalMap h = from_normal_form(1.0, 0.0, 1.0, 1.0, 2);
    std::vector<MoebiusMap> gamma_h = gamma_group(h);
    REQUIRE(gamma_h.size() == 1);
    CHECK(is_identity(gamma_h[0], 1e-9));

    CHECK_THROWS_AS(gamma_group(from_normal_form(1.0, 0.0, 0.0, 1.0, 2)),
                    power_map_input_error);
}

TEST_CASE("deck groups nest and satisfy the defining identity") {
    Rng rng(79);
    Tolerance tol;
    for (int d : {2, 3}) {
        BicriticalMap f = random_bicritical(rng, d, tol);
        DeckChain chain = compute_deck_chain(f, 3, tol);
        for (std::size_t i = 1; i < chain.groups.size(); ++i)
            for (const MoebiusMap& phi : chain.groups[i - 1].elements)
                CHECK(contains_map(chain.groups[i].elements, phi, tol.eps));
        for (const MoebiusMap& phi : chain.groups.back().elements) {
            for (int i = 0; i < 24; ++i) {
                SpherePoint p = rng.sphere_point();
                CHECK(chordal_distance(iterate_eval(f, 3, phi.apply(p)), iterate_eval(f, 3, p)) <
                      1e-8);
            }
        }
    }
}

TEST_CASE("power map deck groups refuse to grow past the element cap") {
    BicriticalMap f = from_normal_form(1.0, 0.0, 0.0, 1.0, 5);
    CHECK_THROWS_AS(compute_deck_chain(f, 6), degenerate_map_error);
}

TEST_CASE("brute-force oracle matches the engine") {
    Tolerance tol;
    // power map z^2 at k = 2: exactly {z, -z, iz, -iz}
    BicriticalMap sq = from_normal_form(1.0, 0.0, 0.0, 1.0, 2);
    std::vector<MoebiusMap> oracle = brute_force_deck(sq, 2, tol);
    REQUIRE(oracle.size() == 4);
    for (int j = 0; j < 4; ++j) CHECK(contains_map(oracle, rotation(4, j), 1e-8));
    CHECK(oracle_matches_engine(sq, 2, tol));

    // dihedral example at k = 2
    CHECK(oracle_matches_engine(from_normal_form(1.0, -1.0, 1.0, 1.0, 2), 2, tol));

    // odd-degree non-power map at k = 2
    CHECK(oracle_matches_engine(from_normal_form(1.0, 1.0, 1.0, -1.0, 3), 2, tol));

    CHECK_THROWS_AS(brute_force_deck(from_normal_form(1.0, 0.0, 0.0, 1.0, 5), 3, tol),
                    oracle_too_large_error);
}
