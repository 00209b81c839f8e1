// SPDX-License-Identifier: Apache-2.0
#include "uvbeam/bank_io.hpp"
#include "uvbeam/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace uvbeam;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

WeightBank small_bank()
{
    WeightBank bank;
    bank.cfg = {3, 0.02, 343.0};
    bank.spec = ConePattern{kPi / 6};
    std::mt19937_64 rng(8);
    for (double f : {1000.0, 2500.5}) {
        WeightMatrix wm;
        wm.f_hz = f;
        wm.weights = oracle::random_grid(3, rng);
        bank.entries.push_back(wm);
    }
    return bank;
}

std::vector<LoadedWeights> parse(const std::string& text)
{
    std::istringstream in(text);
    return read_weight_csv(in);
}

} // namespace

TEST_CASE("numbers carry 12 significant digits")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(914.66666666666663) == "914.666666667");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");
    CHECK(format_number(0.0) == "0");
}

TEST_CASE("weight csv layout")
{
    std::ostringstream out;
    write_weight_csv(out, small_bank());
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "f_hz,n1,n2,re,im");
    std::getline(lines, line);
    CHECK(line.rfind("1000,-1,-1,", 0) == 0);
    int rows = 0;
    while (std::getline(lines, line))
        ++rows;
    CHECK(rows == 17);
}

TEST_CASE("weight csv reads back within print precision")
{
    const WeightBank bank = small_bank();
    std::ostringstream out;
    write_weight_csv(out, bank);
    const auto loaded = parse(out.str());
    REQUIRE(loaded.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(loaded[k].f_hz == bank.entries[k].f_hz);
        CHECK(oracle::max_abs_diff(loaded[k].weights, bank.entries[k].weights)
              <= 1e-11 * oracle::max_abs(bank.entries[k].weights));
    }
}

TEST_CASE("malformed weight csv is rejected")
{
    CHECK_THROWS_AS(parse(""), ValidationError);
    CHECK_THROWS_AS(parse("f,n1,n2,re,im\n"), ValidationError);
    CHECK_THROWS_AS(parse("f_hz,n1,n2,re,im\n"), ValidationError);
    CHECK_THROWS_AS(parse("f_hz,n1,n2,re,im\n1000,0,0,1\n"), ValidationError);
    CHECK_THROWS_AS(parse("f_hz,n1,n2,re,im\n1000,0,0,abc,0\n"), ValidationError);
    CHECK_THROWS_AS(parse("f_hz,n1,n2,re,im\n1000,0,0,1,0\n1000,0,0,1,0\n"), ValidationError);
    // 3 of 4 entries for a 2 x 2 block.
    CHECK_THROWS_AS(parse("f_hz,n1,n2,re,im\n1,-1,-1,1,0\n1,-1,0,1,0\n1,0,-1,1,0\n"), ValidationError);
    // Four entries but not the centered 2 x 2 index set.
    CHECK_THROWS_AS(parse("f_hz,n1,n2,re,im\n1,0,0,1,0\n1,0,1,1,0\n1,1,0,1,0\n1,1,1,1,0\n"), ValidationError);
    // Different N per frequency.
    CHECK_THROWS_AS(parse("f_hz,n1,n2,re,im\n1,0,0,1,0\n2,-1,-1,1,0\n2,-1,0,1,0\n2,0,-1,1,0\n2,0,0,1,0\n"),
                    ValidationError);
    CHECK(parse("f_hz,n1,n2,re,im\n1,0,0,1,0\n").size() == 1);
}

TEST_CASE("map and cut csv headers")
{
    DirectivityMap map;
    map.f_hz = 2000.0;
    map.theta_samples = {0.0, kPi / 4};
    map.phi_samples = {0.0, kPi};
    map.values = {2.0, 2.0, 1.0, 0.0};
    std::ostringstream m;
    write_map_csv(m, map);
    CHECK(m.str().rfind("f_hz,theta_deg,phi_deg,mag,mag_db\n2000,0,0,2,0\n", 0) == 0);
    CHECK(m.str().find("2000,45,180,0,-300\n") != std::string::npos);

    std::ostringstream c;
    write_cut_csv(c, {{-kPi / 2, 0.5, -6.0}});
    CHECK(c.str() == "theta_deg_signed,mag,mag_db\n-90,0.5,-6\n");
}

TEST_CASE("atomic writes replace the target and leave no temporary")
{
    const fs::path dir = fs::temp_directory_path() / "uvbeam_bank_io_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path target = dir / "a.txt";
    write_file_atomic(target, "first");
    write_file_atomic(target, "second");
    CHECK(read_file(target) == "second");
    int entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir))
        ++entries;
    CHECK(entries == 1);
    CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "b.txt", "x"), IoError);
    CHECK_THROWS_AS(read_file(dir / "nope.txt"), IoError);
    fs::remove_all(dir);
}
