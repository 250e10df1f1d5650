#pragma once

// Typed access to the embedded reference-value file.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ihn/expected_data.hpp"

namespace ihn {

struct ExpectedOrbitRow {
    std::string rep;  // compact pair notation
    int max_rank = 0;
};

struct ExpectedCensusRow {
    int n = 0;
    int degree = 0;
    std::string criterion;
    std::uint64_t count = 0;
    bool long_run = false;
};

struct ExpectedValues {
    std::map<int, std::uint64_t> lc_orbit_counts;
    std::map<int, std::vector<ExpectedOrbitRow>> non_lc_bent_orbits;   // n -> rows
    std::map<int, std::pair<std::uint64_t, int>> non_lc_bent_unlisted; // n -> (count, rank)
    std::vector<ExpectedCensusRow> census;

    std::optional<std::uint64_t> orbit_count_for(int n) const {
        auto it = lc_orbit_counts.find(n);
        if (it == lc_orbit_counts.end()) return std::nullopt;
        return it->second;
    }

    std::optional<std::uint64_t> census_count_for(int n, int degree,
                                                  const std::string& criterion) const {
        for (const auto& row : census)
            if (row.n == n && row.degree == degree && row.criterion == criterion)
                return row.count;
        return std::nullopt;
    }
};

inline const ExpectedValues& expected_values() {
    static const ExpectedValues values = [] {
        ExpectedValues v;
        auto j = nlohmann::json::parse(generated::expected_values_json, nullptr, true,
                                       /*ignore_comments=*/true);
        for (auto& [key, val] : j.at("lc_orbit_counts").items())
            v.lc_orbit_counts[std::stoi(key)] = val.get<std::uint64_t>();
        for (auto& [key, rows] : j.at("non_lc_bent_orbits").items()) {
            auto& out = v.non_lc_bent_orbits[std::stoi(key)];
            for (auto& row : rows)
                out.push_back({row.at("rep").get<std::string>(), row.at("max_rank").get<int>()});
        }
        for (auto& [key, val] : j.at("non_lc_bent_unlisted").items())
            v.non_lc_bent_unlisted[std::stoi(key)] = {val.at("count").get<std::uint64_t>(),
                                                      val.at("max_rank").get<int>()};
        for (auto& row : j.at("census"))
            v.census.push_back({row.at("n").get<int>(), row.at("degree").get<int>(),
                                row.at("criterion").get<std::string>(),
                                row.at("count").get<std::uint64_t>(),
                                row.at("long_run").get<bool>()});
        return v;
    }();
    return values;
}

}  // namespace ihn
