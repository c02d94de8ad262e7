#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hdist/datagen.hpp"
#include "hdist/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace hdist;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

PointSet sample_set(Index count, Index d, std::uint64_t seed) {
    GenSpec spec;
    spec.family = GenFamily::UniformCube;
    spec.m = count;
    spec.n = 1;
    spec.d = d;
    spec.seed = seed;
    return generate_pair(spec).first;
}

PointSet narrowed(const PointSet& set) {
    Matrix m = set.data();
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            m(i, j) = static_cast<double>(static_cast<float>(m(i, j)));
    return PointSet(std::move(m));
}

struct TempFile {
    explicit TempFile(const char* name) : path(temp_path(name)) {}
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
};

}  // namespace

TEST_CASE("format detection") {
    CHECK(format_from_path("x.fvecs") == DatasetFormat::FvecsBinary);
    CHECK(format_from_path("x.CSV") == DatasetFormat::Csv);
    CHECK(format_from_path("dir/file.jsonl") == DatasetFormat::JsonLines);
    CHECK_THROWS_AS(format_from_path("file.dat"), ParseError);
    CHECK(parse_format_name("fvecs").has_value());
    CHECK_FALSE(parse_format_name("parquet").has_value());
}

TEST_CASE("fvecs round trip is coordinate-identical after widening") {
    const PointSet original = sample_set(37, 6, 5);
    TempFile file("hdist_io_test.fvecs");
    write_fvecs(file.path, original);
    const PointSet loaded = read_fvecs(file.path);
    REQUIRE(loaded.size() == original.size());
    REQUIRE(loaded.dim() == original.dim());
    // Writing narrows to 32-bit floats; the reload must match that narrowing.
    CHECK(loaded.data() == narrowed(original).data());
}

TEST_CASE("fvecs rejects malformed files") {
    TempFile file("hdist_io_bad.fvecs");
    {
        std::ofstream out(file.path, std::ios::binary);
        const std::int32_t d = 3;
        out.write(reinterpret_cast<const char*>(&d), 4);
        const float value = 1.0f;
        out.write(reinterpret_cast<const char*>(&value), 4);  // truncated payload
    }
    CHECK_THROWS_AS(read_fvecs(file.path), ParseError);

    {
        std::ofstream out(file.path, std::ios::binary);
        std::int32_t d = 2;
        float v[2] = {1.0f, 2.0f};
        out.write(reinterpret_cast<const char*>(&d), 4);
        out.write(reinterpret_cast<const char*>(v), 8);
        d = 3;  // mixed dimensions
        float w[3] = {1.0f, 2.0f, 3.0f};
        out.write(reinterpret_cast<const char*>(&d), 4);
        out.write(reinterpret_cast<const char*>(w), 12);
    }
    CHECK_THROWS_AS(read_fvecs(file.path), ParseError);
    CHECK_THROWS_AS(read_fvecs(temp_path("hdist_io_missing.fvecs")), ParseError);
}

TEST_CASE("csv round trip preserves doubles") {
    const PointSet original = sample_set(12, 3, 9);
    TempFile file("hdist_io_test.csv");
    write_csv(file.path, original);
    const PointSet loaded = read_csv(file.path);
    REQUIRE(loaded.size() == original.size());
    CHECK((loaded.data() - original.data()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("csv rejects malformed rows") {
    TempFile file("hdist_io_bad.csv");
    {
        std::ofstream out(file.path);
        out << "1.0,2.0\n1.0,banana\n";
    }
    CHECK_THROWS_AS(read_csv(file.path), ParseError);
    {
        std::ofstream out(file.path);
        out << "1.0,2.0\n1.0\n";  // mixed dimensions
    }
    CHECK_THROWS_AS(read_csv(file.path), ParseError);
    {
        std::ofstream out(file.path);
        out << "";
    }
    CHECK_THROWS_AS(read_csv(file.path), ParseError);
}

TEST_CASE("jsonl round trip with entity grouping") {
    const PointSet alpha = sample_set(5, 2, 13);
    const PointSet beta = sample_set(7, 2, 14);
    TempFile file("hdist_io_test.jsonl");
    {
        std::ofstream out(file.path);
        for (Index j = 0; j < alpha.size(); ++j)
            out << "{\"vec\": [" << alpha.data()(0, j) << ", " << alpha.data()(1, j)
                << "], \"entity\": \"alpha\"}\n";
        for (Index j = 0; j < beta.size(); ++j)
            out << "{\"vec\": [" << beta.data()(0, j) << ", " << beta.data()(1, j)
                << "], \"entity\": \"beta\"}\n";
    }

    const auto records = read_jsonl(file.path);
    CHECK(records.size() == 12);
    CHECK(records.front().entity == "alpha");

    const PointSet all = read_dataset(file.path, DatasetFormat::JsonLines);
    CHECK(all.size() == 12);
    const PointSet only_beta = read_dataset(file.path, DatasetFormat::JsonLines, "beta");
    CHECK(only_beta.size() == 7);
    CHECK_THROWS_AS(read_dataset(file.path, DatasetFormat::JsonLines, "gamma"), ParseError);

    // Library writer round trip.
    write_jsonl(file.path, alpha, "alpha");
    const PointSet reloaded = read_dataset(file.path, DatasetFormat::JsonLines, "alpha");
    CHECK((reloaded.data() - alpha.data()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jsonl rejects malformed lines") {
    TempFile file("hdist_io_bad.jsonl");
    {
        std::ofstream out(file.path);
        out << "{\"vec\": [1, 2]}\nnot json\n";
    }
    CHECK_THROWS_AS(read_jsonl(file.path), ParseError);
    {
        std::ofstream out(file.path);
        out << "{\"vals\": [1, 2]}\n";  // missing "vec"
    }
    CHECK_THROWS_AS(read_jsonl(file.path), ParseError);
    {
        std::ofstream out(file.path);
        out << "{\"vec\": [1, \"two\"]}\n";
    }
    CHECK_THROWS_AS(read_jsonl(file.path), ParseError);
    {
        std::ofstream out(file.path);
        out << "{\"vec\": [1, 2], \"entity\": 7}\n";
    }
    CHECK_THROWS_AS(read_jsonl(file.path), ParseError);
}

TEST_CASE("entity selection is rejected outside jsonl") {
    const PointSet set = sample_set(3, 2, 15);
    TempFile file("hdist_io_entity.csv");
    write_csv(file.path, set);
    CHECK_THROWS_AS(read_dataset(file.path, DatasetFormat::Csv, "alpha"), ParseError);
}

TEST_CASE("write_dataset dispatches by format") {
    const PointSet set = sample_set(4, 3, 16);
    for (auto [name, format] :
         {std::pair{"hdist_io_any.fvecs", DatasetFormat::FvecsBinary},
          std::pair{"hdist_io_any.csv", DatasetFormat::Csv},
          std::pair{"hdist_io_any.jsonl", DatasetFormat::JsonLines}}) {
        TempFile file(name);
        write_dataset(file.path, format, set);
        const PointSet loaded = read_dataset(file.path, format);
        CHECK(loaded.size() == set.size());
        CHECK(loaded.dim() == set.dim());
    }
}
