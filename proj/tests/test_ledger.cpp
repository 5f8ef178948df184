#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "stratval/binomial.hpp"
#include "stratval/errors.hpp"
#include "stratval/ledger.hpp"

using namespace stratval;

namespace {

AttemptRecord rec(std::string id, std::string agent, std::int64_t ts, long long n,
                  long long k, double p0) {
    AttemptRecord r;
    r.id = std::move(id);
    r.agent = std::move(agent);
    r.timestamp = ts;
    r.predictions = n;
    r.successes = k;
    r.base_prob = p0;
    return r;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("stratval_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() { static int c = 0; return c; }
};

}  // namespace

TEST_SUITE("ledger") {

TEST_CASE("register and fetch round trip") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("r1", "ann", 100, 100, 65, 0.5));
    CHECK(ledger.contains("r1"));
    CHECK_FALSE(ledger.contains("r2"));
    const auto& got = ledger.get("r1");
    CHECK(got.agent == "ann");
    CHECK(got.predictions == 100);
    CHECK(got.successes == 65);
    CHECK(ledger.size() == 1);
    CHECK_THROWS_AS(ledger.get("nope"), not_found_error);
}

TEST_CASE("duplicate ids conflict, bad records rejected") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("r1", "ann", 100, 10, 5, 0.5));
    CHECK_THROWS_AS(ledger.register_attempt(rec("r1", "bob", 200, 10, 5, 0.5)),
                    conflict_error);
    CHECK_THROWS_AS(ledger.register_attempt(rec("r2", "ann", 100, 10, 11, 0.5)),
                    domain_error);
    CHECK_THROWS_AS(ledger.register_attempt(rec("r3", "ann", 100, 0, 0, 0.5)),
                    domain_error);
    CHECK_THROWS_AS(ledger.register_attempt(rec("", "ann", 100, 10, 5, 0.5)), domain_error);
    CHECK_THROWS_AS(ledger.register_attempt(rec("r4", "ann", 100, 10, 5, 1.5)), domain_error);
}

TEST_CASE("records come back ordered by timestamp then id") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("z", "ann", 50, 10, 5, 0.5));
    ledger.register_attempt(rec("a", "ann", 200, 10, 5, 0.5));
    ledger.register_attempt(rec("m", "ann", 50, 10, 5, 0.5));
    const auto all = ledger.records();
    REQUIRE(all.size() == 3);
    CHECK(all[0].id == "m");  // ts 50, id tiebreak
    CHECK(all[1].id == "z");
    CHECK(all[2].id == "a");
}

TEST_CASE("single attempt in its own scope is the plain tail probability") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("r1", "ann", 100, 100, 65, 0.5));
    const double u = ledger.uncertainty("r1", KnowledgeScope::agents({"ann"}));
    CHECK(u == binom_sf({65, 100, 0.5}));  // exactly, m == 1
    CHECK(u == doctest::Approx(0.0018).epsilon(0.03));
}

TEST_CASE("a second earlier attempt doubles the exposure") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("first_try", "ann", 10, 10, 3, 0.5));
    ledger.register_attempt(rec("good_one", "ann", 20, 10, 8, 0.5));
    const double u = ledger.uncertainty("good_one", KnowledgeScope::all());
    CHECK(u == doctest::Approx(0.1063842773437500).epsilon(1e-12));
}

TEST_CASE("ten attempts correct the lucky result to about 1.75 percent") {
    HypothesisLedger ledger;
    for (int i = 1; i <= 9; ++i)
        ledger.register_attempt(
            rec("warmup" + std::to_string(i), "ann", 100 + i, 100, 48, 0.5));
    ledger.register_attempt(rec("lucky", "ann", 200, 100, 65, 0.5));

    const auto detail = ledger.uncertainty_detail("lucky", KnowledgeScope::all());
    CHECK(detail.attempts == 10);
    const double closed_form = best_of_m({65, 100, 0.5}, 10);
    CHECK(detail.value == closed_form);
    CHECK(detail.value == doctest::Approx(1.744965422157915e-02).epsilon(1e-12));
    CHECK(detail.heterogeneous == false);
}

TEST_CASE("later attempts do not count against an earlier result") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("early", "ann", 100, 10, 8, 0.5));
    ledger.register_attempt(rec("late", "ann", 999, 10, 8, 0.5));
    const double early = ledger.uncertainty("early", KnowledgeScope::all());
    CHECK(early == binom_sf({8, 10, 0.5}));  // m = 1: "late" came after
    const double late = ledger.uncertainty("late", KnowledgeScope::all());
    CHECK(late == best_of_m({8, 10, 0.5}, 2));
}

TEST_CASE("same-timestamp attempts count each other") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("a", "ann", 100, 10, 8, 0.5));
    ledger.register_attempt(rec("b", "ann", 100, 10, 8, 0.5));
    CHECK(ledger.uncertainty("a", KnowledgeScope::all()) == best_of_m({8, 10, 0.5}, 2));
    CHECK(ledger.uncertainty("b", KnowledgeScope::all()) == best_of_m({8, 10, 0.5}, 2));
}

TEST_CASE("scope widening never lowers uncertainty") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("r1", "ann", 10, 100, 60, 0.5));
    ledger.register_attempt(rec("r2", "bob", 20, 100, 52, 0.5));
    ledger.register_attempt(rec("r3", "cal", 30, 100, 49, 0.5));
    ledger.register_attempt(rec("mine", "ann", 40, 100, 65, 0.5));

    const double self_only = ledger.uncertainty("mine", KnowledgeScope::agents({"ann"}));
    const double with_bob = ledger.uncertainty("mine", KnowledgeScope::agents({"ann", "bob"}));
    const double everyone = ledger.uncertainty("mine", KnowledgeScope::all());
    CHECK(self_only <= with_bob);
    CHECK(with_bob <= everyone);
    CHECK(self_only == best_of_m({65, 100, 0.5}, 2));
    CHECK(everyone == best_of_m({65, 100, 0.5}, 4));
}

TEST_CASE("result outside the scope still counts itself") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("r1", "ann", 10, 100, 60, 0.5));
    ledger.register_attempt(rec("mine", "zoe", 40, 100, 65, 0.5));
    // scope covers only ann, but the evaluated result is itself an attempt
    const double u = ledger.uncertainty("mine", KnowledgeScope::agents({"ann"}));
    CHECK(u == best_of_m({65, 100, 0.5}, 2));
}

TEST_CASE("unknown ids and agents are not-found errors") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("r1", "ann", 10, 10, 5, 0.5));
    CHECK_THROWS_AS(ledger.uncertainty("ghost", KnowledgeScope::all()), not_found_error);
    CHECK_THROWS_AS(ledger.uncertainty("r1", KnowledgeScope::agents({"ghost"})),
                    not_found_error);
    CHECK_THROWS_AS(KnowledgeScope::agents({}), domain_error);
}

TEST_CASE("heterogeneous attempt shapes are flagged") {
    HypothesisLedger ledger;
    ledger.register_attempt(rec("r1", "ann", 10, 50, 30, 0.5));
    ledger.register_attempt(rec("r2", "ann", 20, 100, 65, 0.5));
    const auto detail = ledger.uncertainty_detail("r2", KnowledgeScope::all());
    CHECK(detail.attempts == 2);
    CHECK(detail.heterogeneous == true);

    HypothesisLedger uniform;
    uniform.register_attempt(rec("r1", "ann", 10, 100, 30, 0.5));
    uniform.register_attempt(rec("r2", "ann", 20, 100, 65, 0.5));
    CHECK(uniform.uncertainty_detail("r2", KnowledgeScope::all()).heterogeneous == false);
}

TEST_CASE("reviewer combine reproduces the worked aggregation examples") {
    // two independent 1% results intersect to 0.01%
    HypothesisLedger ledger;
    // binom_sf(9, 12, 0.5) = 299/4096 is not 1%; instead pick counts whose
    // tails are close to 1% and assert against the closed-form combine
    ledger.register_attempt(rec("a", "ann", 10, 500, 276, 0.5));
    ledger.register_attempt(rec("b", "bob", 10, 500, 243, 0.5));
    const std::vector<std::string> ids{"a", "b"};
    const double ua = ledger.uncertainty("a", KnowledgeScope::all());
    const double ub = ledger.uncertainty("b", KnowledgeScope::all());
    const std::vector<double> probs{ua, ub};
    CHECK(ledger.reviewer_combine(ids) == combine_results(probs, 0.05));

    CHECK_THROWS_AS(ledger.reviewer_combine({}), domain_error);
    const std::vector<std::string> ghost{"nope"};
    CHECK_THROWS_AS(ledger.reviewer_combine(ghost), not_found_error);
}

TEST_CASE("save and load round trip") {
    TempDir dir;
    const auto path = dir.path / "ledger.jsonl";

    HypothesisLedger ledger;
    ledger.register_attempt(rec("r1", "ann", 100, 100, 65, 0.5));
    ledger.register_attempt(rec("r2", "bob", 50, 10, 8, 0.25));
    auto note = rec("r3", "cal", 150, 20, 3, 0.125);
    note.note = "weird run, see notebook";
    ledger.register_attempt(note);
    ledger.save(path);

    const auto loaded = HypothesisLedger::load(path);
    REQUIRE(loaded.size() == 3);
    const auto a = ledger.records();
    const auto b = loaded.records();
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].agent == b[i].agent);
        CHECK(a[i].timestamp == b[i].timestamp);
        CHECK(a[i].predictions == b[i].predictions);
        CHECK(a[i].successes == b[i].successes);
        CHECK(a[i].base_prob == b[i].base_prob);
        CHECK(a[i].note == b[i].note);
    }

    // saving again over the existing file keeps it readable
    ledger.save(path);
    CHECK(HypothesisLedger::load(path).size() == 3);
}

TEST_CASE("empty file loads as an empty ledger") {
    TempDir dir;
    const auto path = dir.path / "empty.jsonl";
    std::ofstream(path).close();
    CHECK(HypothesisLedger::load(path).size() == 0);
}

TEST_CASE("malformed lines are rejected with their line number") {
    TempDir dir;
    const auto path = dir.path / "bad.jsonl";

    auto write = [&](const std::string& content) {
        std::ofstream out(path, std::ios::trunc);
        out << content;
    };
    auto expect_line = [&](std::size_t line) {
        try {
            HypothesisLedger::load(path);
            FAIL("expected a parse error");
        } catch (const parse_error& e) {
            CHECK(e.line() == line);
        }
    };

    write("not json\n");
    expect_line(1);

    write(R"({"id":"r1","agent":"a","ts":1,"n":10,"k":5,"p0":0.5,"note":""})"
          "\n"
          R"({"id":"r2","agent":"a","ts":1,"n":10,"k":11,"p0":0.5,"note":""})"
          "\n");
    expect_line(2);  // successes exceed predictions

    write(R"({"id":"r1","agent":"a","ts":1,"n":10,"k":5,"p0":0.5,"note":"","extra":1})"
          "\n");
    expect_line(1);  // unknown key

    write(R"({"id":"r1","agent":"a","ts":1,"n":10,"k":5,"p0":0.5})"
          "\n");
    expect_line(1);  // missing key

    write(R"({"id":"r1","agent":"a","ts":1,"n":10,"k":5,"p0":0.5,"note":""})"
          "\n"
          R"({"id":"r1","agent":"b","ts":2,"n":10,"k":5,"p0":0.5,"note":""})"
          "\n");
    expect_line(2);  // duplicate id

    CHECK_THROWS_AS(HypothesisLedger::load(dir.path / "missing.jsonl"), io_error);
}

}  // TEST_SUITE

