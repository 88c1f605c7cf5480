// Copyright 2026 The qclock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qclock/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using namespace qclock;
using qclock::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content = "") {
    const auto p = std::filesystem::path(testing::TempDir()) / name;
    if (!content.empty()) {
        std::ofstream(p) << content;
    }
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) {
        out.push_back(line);
    }
    return out;
}

}  // namespace

TEST(cli, collapse_time_example) {
    const Outcome r = call({"collapse-time", "--height", "20", "--frequency1", "384e12", "--frequency2", "433e12",
                            "--photons", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(r.out), 1.169, 0.005 * 1.169);
}

TEST(cli, collapse_time_defaults_are_rb_cs) {
    const Outcome r = call({"collapse-time"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(r.out) / 1.16871149292492, 1.0, 1e-12);
}

TEST(cli, flat_spacetime_collapse_is_computation_error) {
    const Outcome r = call({"collapse-time", "--height", "0"});
    EXPECT_EQ(r.code, cli::kExitComputation);
    EXPECT_NE(r.err.find("no collapse"), std::string::npos);
}

TEST(cli, verify_quick) {
    const std::string path = temp_file("verify_quick.json");
    const Outcome r = call({"verify", "--suite", "quick", "-o", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("pass"), std::string::npos);
    const auto doc = nlohmann::json::parse(slurp(path));
    EXPECT_EQ(doc.at("suite"), "quick");
    EXPECT_EQ(doc.at("verdict"), "pass");
    EXPECT_LT(doc.at("max_delta").get<double>(), 1e-10);
    bool saw_audit = false;
    for (const auto& c : doc.at("cases")) {
        if (c.at("quantity") == "P00_printed_prefactor") {
            EXPECT_EQ(c.at("status"), "expected-inconsistent");
            saw_audit = true;
        }
    }
    EXPECT_TRUE(saw_audit);
}

TEST(cli, interferogram_csv) {
    const Outcome r = call({"interferogram", "--tau-count", "5", "--models", "analytic_parity,oracle_parity"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 11u);
    EXPECT_EQ(ls[0], "tau_s,model,value,phi_hom");
    EXPECT_EQ(ls[1].rfind("0,analytic_parity,1,", 0), 0u) << ls[1];
    EXPECT_EQ(ls[2].rfind("0,oracle_parity,", 0), 0u) << ls[2];
}

TEST(cli, flat_interferogram_constant) {
    const Outcome r = call({"interferogram", "--height", "0", "--phi", "0.5", "--tau-count", "16", "--models",
                            "analytic_parity"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 17u);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        std::stringstream ss(ls[i]);
        std::string tau, model, value;
        std::getline(ss, tau, ',');
        std::getline(ss, model, ',');
        std::getline(ss, value, ',');
        EXPECT_EQ(std::stod(value), std::cos(0.5));
    }
}

TEST(cli, reruns_are_byte_identical) {
    const std::vector<std::string> args{"interferogram", "--tau-count", "64", "--models",
                                        "oracle_parity,oracle_mz,analytic_mz"};
    EXPECT_EQ(call(args).out, call(args).out);
    const std::vector<std::string> heat{"heatmap", "--df-count", "8", "--h-count", "8"};
    EXPECT_EQ(call(heat).out, call(heat).out);
}

TEST(cli, heatmap_csv) {
    const Outcome r = call({"heatmap", "--df-count", "3", "--h-count", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 1u + 12u + 4u);
    EXPECT_EQ(ls[0], "delta_f_hz,height_m,tau_ent_s,marker");
    EXPECT_NE(ls.back().find(",iv"), std::string::npos);
}

TEST(cli, config_file_nested_tables) {
    const std::string cfg = temp_file("good.json", R"({
        "gravity": {"h_upper": 500, "h_lower": 0},
        "clock": {"photons": 2,
                  "bin1": {"frequency_hz": 384e12},
                  "bin2": {"frequency_hz": 384.01e12}},
        "sweep": {"tau": {"start": 0, "stop": 100, "count": 3}, "models": ["analytic_parity"]}
    })");
    const Outcome ct = call({"collapse-time", "--config", cfg});
    ASSERT_EQ(ct.code, 0) << ct.err;
    EXPECT_NEAR(std::stod(ct.out) / 229.1, 1.0, 0.005);
    const Outcome sw = call({"interferogram", "--config", cfg});
    ASSERT_EQ(sw.code, 0) << sw.err;
    EXPECT_EQ(lines(sw.out).size(), 4u);
    // Flags override the file.
    const Outcome over = call({"collapse-time", "--config", cfg, "--photons", "1"});
    EXPECT_NEAR(std::stod(over.out) / (2.0 * std::stod(ct.out)), 1.0, 1e-12);
}

TEST(cli, config_errors_listed_with_paths) {
    const std::string cfg = temp_file("bad.json", R"({
        "gravity": {"h_upper": "high"},
        "clock": {"bin1": {"frequency_hz": 1e14, "wavelength_m": 780e-9}},
        "sweep": {"models": ["analytic_parity", "bogus"]}
    })");
    const Outcome r = call({"interferogram", "--config", cfg});
    EXPECT_EQ(r.code, cli::kExitConfig);
    EXPECT_NE(r.err.find("gravity.h_upper"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("clock.bin1"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("sweep.models"), std::string::npos) << r.err;
}

TEST(cli, semantic_errors) {
    EXPECT_EQ(call({"collapse-time", "--wavelength1", "780e-9", "--frequency1", "3e14"}).code, cli::kExitConfig);
    EXPECT_EQ(call({"collapse-time", "--eta", "1.5"}).code, cli::kExitConfig);
    EXPECT_EQ(call({"collapse-time", "--height", "1e12"}).code, cli::kExitConfig);
    EXPECT_EQ(call({"interferogram", "--tau-count", "1"}).code, cli::kExitConfig);
    EXPECT_EQ(call({"verify", "--suite", "huge"}).code, cli::kExitConfig);
    EXPECT_EQ(call({"collapse-time", "--config", "/nonexistent/qclock.json"}).code, cli::kExitConfig);
    EXPECT_EQ(call({"bogus"}).code, cli::kExitConfig);
    EXPECT_EQ(call({"collapse-time", "--photons", "0"}).code, cli::kExitConfig);
}

TEST(cli, oracle_capacity) {
    const Outcome r = call({"interferogram", "--photons", "9", "--models", "oracle_parity", "--tau-count", "4"});
    EXPECT_EQ(r.code, cli::kExitCapability);
    EXPECT_EQ(call({"interferogram", "--photons", "9", "--models", "analytic_parity", "--tau-count", "4"}).code, 0);
}

TEST(cli, first_zero) {
    const Outcome a = call({"first-zero"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_NEAR(std::stod(a.out) / 1.16871149292492, 1.0, 1e-9);
    const Outcome o = call({"first-zero", "--model", "oracle_parity"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NEAR(std::stod(o.out) / 1.16871149292492, 1.0, 1e-6);
    EXPECT_EQ(call({"first-zero", "--model", "analytic_mz"}).code, cli::kExitConfig);
    EXPECT_EQ(call({"first-zero", "--height", "0"}).code, cli::kExitComputation);
}

TEST(cli, state_dump) {
    const Outcome r = call({"state-dump", "--photons", "1", "--stage", "input"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc.at("modes"), (nlohmann::json{"U1", "U2", "L1", "L2"}));
    ASSERT_EQ(doc.at("terms").size(), 2u);
    EXPECT_EQ(doc.at("terms")[0].at("occ"), (nlohmann::json{0, 1, 1, 0}));
    EXPECT_NEAR(doc.at("terms")[0].at("re").get<double>(), 1.0 / std::sqrt(2.0), 1e-15);

    const Outcome out = call({"state-dump", "--photons", "1", "--tau", "0.5"});
    ASSERT_EQ(out.code, 0) << out.err;
    EXPECT_EQ(nlohmann::json::parse(out.out).at("modes"), (nlohmann::json{"plus1", "minus1", "plus2", "minus2"}));

    const Outcome noon = call({"state-dump", "--state", "noon", "--photons", "2"});
    ASSERT_EQ(noon.code, 0) << noon.err;
    EXPECT_EQ(call({"state-dump", "--state", "noon", "--stage", "memory"}).code, cli::kExitConfig);
    EXPECT_EQ(call({"state-dump", "--state", "fock"}).code, cli::kExitConfig);
}

TEST(cli, file_and_svg_output) {
    const std::string csv = temp_file("curve.csv");
    const std::string svg = temp_file("curve.svg");
    const Outcome r = call({"interferogram", "--tau-count", "32", "-o", csv, "--svg", svg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(csv).rfind("tau_s,model,value,phi_hom\n", 0), 0u);
    const std::string plot = slurp(svg);
    EXPECT_EQ(plot.rfind("<svg", 0), 0u);
    EXPECT_NE(plot.find("</svg>"), std::string::npos);

    const std::string map = temp_file("map.svg");
    ASSERT_EQ(call({"heatmap", "--df-count", "5", "--h-count", "5", "-o", temp_file("map.csv"), "--svg", map}).code,
              0);
    EXPECT_NE(slurp(map).find("</svg>"), std::string::npos);
}
