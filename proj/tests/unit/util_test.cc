// Copyright 2026 The Hostility Detection Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include <gtest/gtest.h>

#include "hostility/dsv.h"
#include "hostility/error.h"
#include "hostility/hash.h"
#include "hostility/utf8.h"

namespace hostility {
namespace {

TEST(Utf8Test, DecodesMixedScripts) {
  std::u32string out;
  ASSERT_TRUE(utf8::Decode("aअ😀", &out));
  EXPECT_EQ(out, (std::u32string{U'a', U'अ', U'\U0001F600'}));
  EXPECT_EQ(utf8::Encode(out), "aअ😀");
  EXPECT_EQ(utf8::Length("aअ😀"), 3u);
}

TEST(Utf8Test, RejectsMalformedSequences) {
  std::u32string out;
  EXPECT_FALSE(utf8::Decode("\xC0\xAF", &out));          // overlong '/'
  EXPECT_FALSE(utf8::Decode("\xED\xA0\x80", &out));      // surrogate
  EXPECT_FALSE(utf8::Decode("\xF4\x90\x80\x80", &out));  // above U+10FFFF
  EXPECT_FALSE(utf8::Decode("\xE0\xA4", &out));          // truncated
  EXPECT_FALSE(utf8::IsValid("\xFF"));
  EXPECT_THROW(utf8::DecodeOrThrow("\xFF", "row 3"), DataError);
}

TEST(HashTest, MatchesPublishedFnv1aVectors) {
  EXPECT_EQ(HashHex(""), "cbf29ce484222325");
  EXPECT_EQ(HashHex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(HashHex("foobar"), "85944171f73967e8");
  Fnv1a h;
  h.Update("foo").Update("bar");
  EXPECT_EQ(h.hex(), "85944171f73967e8");
}

TEST(HashTest, ReadFileMissingIsDataError) {
  EXPECT_THROW(ReadFile("/nonexistent/file.txt"), DataError);
}

TEST(DsvTest, ParsesQuotedFieldsAcrossLines) {
  const auto records =
      ParseDsv("\xEF\xBB\xBFid,text\n1,\"a, \"\"b\"\"\nc\"\n\n2,plain\r\n", ',');
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].fields, (std::vector<std::string>{"id", "text"}));
  EXPECT_EQ(records[1].fields[1], "a, \"b\"\nc");
  EXPECT_EQ(records[1].line, 2u);
  EXPECT_EQ(records[2].fields, (std::vector<std::string>{"2", "plain"}));
  EXPECT_EQ(records[2].line, 5u);
}

TEST(DsvTest, UnterminatedQuoteIsError) {
  EXPECT_THROW(ParseDsv("a,\"b\n", ','), DataError);
}

TEST(DsvTest, DetectsDelimiterFromFirstLine) {
  EXPECT_EQ(DetectDelimiter("id\ttext\n1\ta,b\n"), '\t');
  EXPECT_EQ(DetectDelimiter("id,text\n1\tx\n"), ',');
  EXPECT_EQ(ParseDelimiterName("tab"), '\t');
  EXPECT_EQ(ParseDelimiterName("comma"), ',');
  EXPECT_EQ(ParseDelimiterName(";"), ';');
}

TEST(DsvTest, JoinRecordRoundTrips) {
  const std::vector<std::string> fields = {"x", "a,b", "say \"hi\"", "l1\nl2", ""};
  const auto records = ParseDsv(JoinRecord(fields, ',') + "\n", ',');
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].fields, fields);
}

}  // namespace
}  // namespace hostility
