#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wsn/errors.hpp"
#include "wsn/meshsim.hpp"

using namespace wsn;

namespace {

// Independent oracle: depth-first enumeration of every simple path to the
// coordinator whose interior nodes can all relay. Returns -1 if no such
// path exists. Deliberately brute force; never shares code with the BFS.
int oracle_hops_visit(const std::map<std::string, std::set<std::string>>& adj,
                      const std::string& at, const std::string& coordinator,
                      const std::set<std::string>& relays,
                      std::set<std::string>& visited, int depth) {
    if (at == coordinator) return depth;
    int best = -1;
    if (!adj.contains(at)) return best;
    for (const auto& next : adj.at(at)) {
        if (visited.contains(next)) continue;
        // only the coordinator or an FFD may extend the path
        if (next != coordinator && !relays.contains(next)) continue;
        visited.insert(next);
        const int sub = oracle_hops_visit(adj, next, coordinator, relays, visited, depth + 1);
        visited.erase(next);
        if (sub >= 0 && (best < 0 || sub < best)) best = sub;
    }
    return best;
}

int oracle_min_hops(const Topology& topology, const std::string& from,
                    const std::string& coordinator, const std::set<std::string>& relays) {
    std::map<std::string, std::set<std::string>> adj;
    for (const auto& [name, neighbors] : topology) {
        adj[name];
        for (const auto& n : neighbors) {
            adj[name].insert(n);
            adj[n].insert(name);
        }
    }
    std::set<std::string> visited{from};
    return oracle_hops_visit(adj, from, coordinator, relays, visited, 0);
}

std::string node_name(int i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "N%02d", i);
    return buf;
}

} // namespace

TEST_CASE("star topology routes everything straight to the coordinator") {
    Topology topo;
    topo["C"] = {"A", "B", "D"};
    const auto routes = build_routes(topo, "C", {});
    CHECK(routes.size() == 3);
    for (const auto& [node, hop] : routes) CHECK(hop == "C");
}

TEST_CASE("relay chain forwards hop by hop") {
    Topology topo;
    topo["A"] = {"B"};
    topo["B"] = {"C"};
    const auto routes = build_routes(topo, "C", {"B"});
    CHECK(routes.at("A") == "B");
    CHECK(routes.at("B") == "C");
    CHECK(route_hops(routes, "A", "C") == 2);
}

TEST_CASE("a leaf cannot relay") {
    Topology topo;
    topo["A"] = {"B"};
    topo["B"] = {"C"};
    // B is an RFD, so A has no path through it
    CHECK_THROWS_AS(build_routes(topo, "C", {}), UnreachableError);
}

TEST_CASE("equal-length routes pick the smaller next-hop name") {
    Topology topo;
    topo["C"] = {"F2", "F1"};
    topo["F2"] = {"A"};
    topo["F1"] = {"A"};
    const auto routes = build_routes(topo, "C", {"F1", "F2"});
    CHECK(routes.at("A") == "F1");
}

TEST_CASE("routing matches the brute-force oracle on small graphs") {
    std::mt19937_64 rng(2025);
    int generated = 0;
    int reachable_nodes = 0;
    while (generated < 200) {
        const int n = 3 + static_cast<int>(rng() % 6); // 3..8 nodes
        Topology topo;
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back(node_name(i));
        const std::string coordinator = names[0];
        for (const auto& name : names) topo[name];
        // random edge set over the n nodes
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng() % 100 < 45) topo[names[i]].push_back(names[j]);
            }
        }
        std::set<std::string> relays;
        for (int i = 1; i < n; ++i) {
            if (rng() % 2 == 0) relays.insert(names[i]);
        }
        ++generated;

        std::map<std::string, std::string> routes;
        bool unreachable = false;
        try {
            routes = build_routes(topo, coordinator, relays);
        } catch (const UnreachableError&) {
            unreachable = true;
        }

        bool oracle_all_reachable = true;
        for (int i = 1; i < n; ++i) {
            if (oracle_min_hops(topo, names[i], coordinator, relays) < 0) {
                oracle_all_reachable = false;
            }
        }
        REQUIRE(unreachable == !oracle_all_reachable);
        if (unreachable) continue;

        for (int i = 1; i < n; ++i) {
            const int expected = oracle_min_hops(topo, names[i], coordinator, relays);
            REQUIRE(route_hops(routes, names[i], coordinator) == expected);
            ++reachable_nodes;
        }
    }
    CHECK(reachable_nodes > 200); // the generator actually produced work
}
