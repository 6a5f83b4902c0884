#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gaifman/corpus.hpp"
#include "gaifman/eval.hpp"
#include "gaifman/families.hpp"
#include "gaifman/specter_nf.hpp"
#include "gaifman/structure_io.hpp"

using namespace gaifman;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("gaifman-test-" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("generator specs") {
    CHECK(structure_from_spec("path 5").domain_size() == 5);
    CHECK(structure_from_spec("cycle 6").domain_size() == 6);
    CHECK(structure_from_spec("clique 4").tuples(0).size() == 12);
    CHECK(structure_from_spec("pointed-cycle 5").domain_size() == 6);
    CHECK(structure_from_spec("ord 2 4").domain_size() == 9);
    CHECK(structure_from_spec("ord-b 2 3").signature().index_of("B") >= 0);
    CHECK_THROWS(structure_from_spec("frobnicate 3"));
    CHECK_THROWS(structure_from_spec("path"));
}

TEST_CASE("corpus manifest loading") {
    TempDir dir;
    {
        std::ofstream out(dir.path / "fam.corpus");
        out << "# small families\n";
        out << "p4 = path 4\n";
        out << "c5 = cycle 5\n";
        out << "two = ord 2 3\n";
    }
    CHECK_THROWS(load_corpus((dir.path / "fam.corpus").string()));  // mixed signatures
    {
        std::ofstream out(dir.path / "ok.corpus");
        out << "p4 = path 4\nc5 = cycle 5\n";
    }
    Corpus corpus = load_corpus((dir.path / "ok.corpus").string());
    REQUIRE(corpus.size() == 2);
    CHECK(corpus.items()[0].first == "p4");
    CHECK(corpus.items()[1].second.domain_size() == 5);
}

TEST_CASE("corpus directory loading") {
    TempDir dir;
    save_structure_file(gen_path(3), (dir.path / "b.struct").string());
    save_structure_file(gen_path(4), (dir.path / "a.struct").string());
    Corpus corpus = load_corpus(dir.path.string());
    REQUIRE(corpus.size() == 2);
    CHECK(corpus.items()[0].first == "a");  // sorted by file name
    CHECK(corpus.items()[0].second.domain_size() == 4);
    CHECK_THROWS(load_corpus((dir.path / "missing.corpus").string()));
}

TEST_CASE("structure files round trip through disk") {
    TempDir dir;
    Structure s = gen_ord(2, 4);
    std::string path = (dir.path / "ord.struct").string();
    save_structure_file(s, path);
    CHECK(load_structure_file(path) == s);
}

TEST_CASE("specter normal form report shape") {
    // A corpus where the target is preserved: phi = "some isolated point"
    // over one-component vs two-component graphs.
    Corpus corpus;
    corpus.add("p2", gen_path(2));
    corpus.add("p3", gen_path(3));
    corpus.add("lonely", disjoint_union(gen_path(2), gen_path(1)));
    corpus.add("pair", disjoint_union(gen_path(1), gen_path(1)));
    Formula phi = parse_formula("exists x. forall y in N[1](x). y = x", Signature::graph());
    SpecterNF nf = specter_normal_form(phi, corpus, 1, 1, 1);
    CHECK(nf.preserved);
    CHECK(nf.agree_everywhere);
    for (const auto& [name, want, got] : nf.agreement) CHECK(want == got);
    CHECK(!nf.candidates.empty());
    // The emitted psi is a genuine formula: evaluate it directly as well.
    for (const auto& [name, s] : corpus.items())
        CHECK(eval_sentence(s, nf.psi) == eval_sentence(s, phi));
    CHECK_THROWS(specter_normal_form(phi, Corpus{}, 1, 1, 1));
}

TEST_CASE("specter normal form flags the empty-domain edge case") {
    Corpus corpus;
    corpus.add("empty", Structure(Signature::graph(), 0));
    corpus.add("p1", gen_path(1));
    Formula taut = parse_formula("forall x. x = x", Signature::graph());
    SpecterNF nf = specter_normal_form(taut, corpus, 1, 0, 1);
    // The empty structure models the tautology but realizes no type.
    CHECK(!nf.agree_everywhere);
    CHECK(nf.empty_domain_edge);
}
