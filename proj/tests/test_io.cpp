#include <doctest.h>

#include <cstdio>

#include "gaugelab/datagen.hpp"
#include "gaugelab/io.hpp"

using namespace gaugelab;

TEST_CASE("format detection by extension") {
    CHECK(detect_format("emb.csv") == EmbeddingFormat::Csv);
    CHECK(detect_format("emb.jsonl") == EmbeddingFormat::Jsonl);
    CHECK(detect_format("emb.ndjson") == EmbeddingFormat::Jsonl);
    CHECK(detect_format("noext") == EmbeddingFormat::Csv);
}

TEST_CASE("csv parse round trip") {
    const EmbeddingMatrix cloud = generate_unit_cloud(8, 3, 44);
    const std::string csv = embeddings_to_csv(cloud);
    CHECK(csv.rfind("id,c0,c1,c2\n", 0) == 0);
    const EmbeddingMatrix back = parse_embeddings(csv, EmbeddingFormat::Csv);
    CHECK(back.rows() == 8);
    CHECK(back.cols() == 3);
    CHECK(back.data() == cloud.data());  // %.17g is lossless for doubles
}

TEST_CASE("csv parse errors carry line numbers") {
    try {
        parse_embeddings("id,c0,c1\n0,1,0\n1,abc,1\n", EmbeddingFormat::Csv);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }

    // ragged row
    CHECK_THROWS_AS(parse_embeddings("id,c0,c1\n0,1,0\n1,1\n", EmbeddingFormat::Csv),
                    ParseError);

    // zero embedding row is a domain-level parse error naming the row
    try {
        parse_embeddings("id,c0,c1\n0,1,0\n1,0,0\n", EmbeddingFormat::Csv);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("zero") != std::string::npos);
    }

    // fewer than 2 rows
    CHECK_THROWS_AS(parse_embeddings("id,c0,c1\n0,1,0\n", EmbeddingFormat::Csv), ParseError);
}

TEST_CASE("jsonl parsing") {
    const std::string jsonl =
        "{\"id\": 0, \"vector\": [1.0, 0.0]}\n"
        "{\"id\": 1, \"vector\": [0.0, 1.0]}\n";
    const EmbeddingMatrix e = parse_embeddings(jsonl, EmbeddingFormat::Jsonl);
    CHECK(e.rows() == 2);
    CHECK(e.cols() == 2);
    CHECK(e.row(0)[0] == 1.0);
    CHECK(e.row(1)[1] == 1.0);

    CHECK_THROWS_AS(parse_embeddings("not json\n{\"vector\": [1]}\n", EmbeddingFormat::Jsonl),
                    ParseError);
    CHECK_THROWS_AS(
        parse_embeddings("{\"id\": 0}\n{\"id\": 1, \"vector\": [1]}\n", EmbeddingFormat::Jsonl),
        ParseError);
    // inconsistent dimensions
    CHECK_THROWS_AS(
        parse_embeddings("{\"vector\": [1, 2]}\n{\"vector\": [1]}\n", EmbeddingFormat::Jsonl),
        ParseError);
}

TEST_CASE("file round trip") {
    const std::string path = "test_io_tmp.csv";
    const EmbeddingMatrix cloud = generate_unit_cloud(4, 2, 5);
    write_text_file(path, embeddings_to_csv(cloud));
    const EmbeddingMatrix back = read_embeddings(path, EmbeddingFormat::Csv);
    CHECK(back.data() == cloud.data());
    CHECK_THROWS(read_text_file("does_not_exist_anywhere.csv"));
    std::remove(path.c_str());
}
