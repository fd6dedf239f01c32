#pragma once

// Golden replay fixtures: two reference episodes (a magazine comparison and
// a genus comparison), each with single-query and multi-query scripts, plus
// the toy corpus their searches hit. The transcripts mirror the frozen wire
// format end to end.

#include <string>
#include <vector>

#include "ragloop/corpus.hpp"
#include "ragloop/llm.hpp"

namespace ragloop::fixtures {

inline const std::string kMagazineQuestion =
    "Which magazine was started first Arthur's Magazine or First for Women?";
inline const std::vector<std::string> kMagazineGold = {"Arthur's Magazine"};

inline const std::string kGenusQuestion =
    "Are both Dictyosperma, and Huernia described as a genus?";
inline const std::vector<std::string> kGenusGold = {"Yes"};

inline std::vector<std::string> magazine_single_turns() {
  return {
      "<think> To determine which magazine was started first between Arthur's Magazine and "
      "First for Women, I need to find the founding years of both magazines. </think>\n"
      "<search> founding year of Arthur's Magazine </search>",
      "\n<think> From the search results, I found that Arthur's Magazine was published from "
      "1844 to 1846. Now, I need to find the founding year of First for Women. </think>\n"
      "<search> founding year of First for Women magazine </search>",
      "\n<think> First for Women was founded in 1978. Comparing the founding years, Arthur's "
      "Magazine (1844) is clearly older than First for Women (1978). </think>\n"
      "<answer> Arthur's Magazine </answer>",
  };
}

inline std::vector<std::string> magazine_multi_turns() {
  return {
      "<think> To determine which magazine was started first, I need to compare the founding "
      "years of both \"Arthur's Magazine\" and \"First for Women.\" </think>\n"
      "<search> Arthur's Magazine founding year, First for Women founding year </search>",
      "\n<think> From the search results: - \"Arthur's Magazine\" was published from 1844 to "
      "1846. - \"First for Women\" was started in 1989. Therefore, \"Arthur's Magazine\" was "
      "started first. </think>\n"
      "<answer> Arthur's Magazine </answer>",
  };
}

inline std::vector<std::string> genus_single_turns() {
  return {
      "<think> To determine if both Dictyosperma and Huernia are described as genera, I need "
      "to verify the taxonomic classification of each. </think>\n"
      "<search> Dictyosperma genus </search>",
      "\n<think> The search results indicate that Dictyosperma is not clearly identified as a "
      "genus in the provided information. It seems to be referred to as \"Polyspatha\" in the "
      "context of species. I will need to conduct another search specifically for "
      "\"Dictyosperma\" to confirm its status as a genus. </think>\n"
      "<search> Huernia genus </search>",
      "\n<think>The search results confirm that Huernia is indeed described as a genus, with "
      "its first description dating back to 1810. Now, I need to confirm the status of "
      "Dictyosperma. </think>\n"
      "<search> Dictyosperma genus </search>",
      "\n<think> The search results do not provide clear evidence that Dictyosperma is a "
      "genus. Instead, it seems to be associated with the genus Polyspatha. Given the "
      "information available, I cannot confirm that both Dictyosperma and Huernia are "
      "described as genera. </think>\n"
      "<answer> No </answer>",
  };
}

inline std::vector<std::string> genus_multi_turns() {
  return {
      "<think> To determine if both Dictyosperma and Huernia are described as genera, I need "
      "to verify their taxonomic status. </think>\n"
      "<search> Dictyosperma genus, Huernia genus </search>",
      "\n<think> From the search results, it appears that:\n"
      "- Dictyosperma is not explicitly mentioned as a genus, but there is a genus named "
      "Dictyospermum, which might be a similar spelling.\n"
      "- Huernia is indeed described as a genus within the family Apocynaceae, subfamily "
      "Asclepiadoideae.\n"
      "I should confirm the status of Dictyosperma. </think>\n"
      "<search> Dictyosperma plant </search>",
      "\n<think> Based on the additional search, Dictyosperma is confirmed to be a monotypic "
      "genus of flowering plant in the palm family, found in the Mascarene Islands. \n"
      "Both Dictyosperma and Huernia are described as genera. </think>\n"
      "<answer> Yes </answer>",
  };
}

inline ScriptBook golden_single_book() {
  return {{kMagazineQuestion, magazine_single_turns()},
          {kGenusQuestion, genus_single_turns()}};
}

inline ScriptBook golden_multi_book() {
  return {{kMagazineQuestion, magazine_multi_turns()},
          {kGenusQuestion, genus_multi_turns()}};
}

// Small corpus the golden searches retrieve from; every document fits in one
// 100-word passage.
inline std::vector<RawDocument> toy_documents() {
  return {
      {"arthurs-magazine", "Arthur's Magazine",
       "Arthur's Magazine Arthur's Magazine (1844-1846) was an American literary periodical "
       "published in Philadelphia in the 19th century. Edited by Timothy Shay Arthur, it "
       "featured work by Edgar A. Poe and other American writers. The founding year of "
       "Arthur's Magazine was 1844 and it merged into Godey's Lady's Book in 1846."},
      {"arthur-magazine", "Arthur (magazine)",
       "moved Arthur's headquarters from Los Angeles to New York, the seat of North America's "
       "publishing industry. On March 6, 2011, Jay Babcock announced that the magazine would "
       "cease to exist in any form as of March 15, 2011."},
      {"first-for-women", "First for Women",
       "First for Women First for Women is a woman's magazine published by Bauer Media Group "
       "in the USA. The magazine was started in 1989. It is based in Englewood Cliffs, New "
       "Jersey. The founding year of First for Women magazine makes it a recent women's "
       "interest publication."},
      {"dictyospermum", "Dictyospermum",
       "Dictyospermum Dictyospermum is a genus of monocotyledonous flowering plants in the "
       "dayflower family, first described in 1849. It is native to Africa, southern Asia and "
       "New Guinea."},
      {"huernia", "Huernia",
       "Huernia have shown the genus to be monophyletic, and most closely related to the "
       "genus Tavaresia, and to a widespread branch of stapeliads comprising the genera "
       "Orbea, Piaranthus and Stapelia. The genus Huernia was first described in 1810."},
      {"dictyosperma", "Dictyosperma",
       "Dictyosperma Dictyosperma is a monotypic genus of flowering plant in the palm family "
       "found in the Mascarene Islands. The plant is commonly called princess palm or "
       "hurricane palm."},
      {"dictyoloma", "Dictyoloma",
       "Dictyoloma Dictyoloma is a genus of flowering plants that belongs to the family "
       "Rutaceae. The plant is found in South America."},
      {"godeys", "Godey's Lady's Book",
       "Godey's Lady's Book was an American women's magazine that was published in "
       "Philadelphia from 1830 to 1878. It absorbed several smaller periodicals during the "
       "1840s."},
  };
}

inline PassageStore toy_store() { return ingest(toy_documents(), 100); }

// Reference transcripts as a transcript file would hold them, information
// blocks included; used by the parser tests.
inline const std::string kMagazineSingleTranscript =
    "<think> To determine which magazine was started first between Arthur's Magazine and "
    "First for Women, I need to find the founding years of both magazines. </think>\n"
    "<search> founding year of Arthur's Magazine </search>\n"
    "<information>\n"
    "Doc 1: Arthur (magazine)   moved Arthur's headquarters from Los Angeles to New York, the "
    "seat of North America's publishing industry. On March 6, 2011, Jay Babcock announced "
    "that the magazine would cease to exist in any form as of March 15, 2011, though its "
    "archive and store would remain active for an unspecified period thereafter.\n"
    "</information>\n"
    "\n"
    "<think> From the search results, I found that Arthur's Magazine was published from 1844 "
    "to 1846. Now, I need to find the founding year of First for Women. </think>\n"
    "<search> founding year of First for Women magazine </search>\n"
    "<information>\n"
    "Doc 1: First for Women - Wikipedia   First for Women is an American women's interest "
    "magazine published by Bauer Media Group. It was founded in 1978 and is based in New York "
    "City. The magazine focuses on topics such as health, beauty, relationships, and personal "
    "finance.\n"
    "</information>\n"
    "\n"
    "<think> First for Women was founded in 1978. Comparing the founding years, Arthur's "
    "Magazine (1844) is clearly older than First for Women (1978). </think>\n"
    "<answer> Arthur's Magazine </answer>";

inline const std::string kMagazineMultiTranscript =
    "<think> To determine which magazine was started first, I need to compare the founding "
    "years of both \"Arthur's Magazine\" and \"First for Women.\" </think>\n"
    "<search> Arthur's Magazine founding year, First for Women founding year </search>\n"
    "<information>\n"
    "{\n"
    "  \"query\": [\n"
    "    \"Arthur's Magazine founding year\",\n"
    "    \"First for Women founding year\"\n"
    "  ],\n"
    "  \"documents\": [\n"
    "    \"Doc 1: Arthur's Magazine   Arthur's Magazine Arthur's Magazine (1844-1846) was an "
    "American literary periodical published in Philadelphia in the 19th century.\",\n"
    "    \"Doc 1: First woman   firsts Doc 2: First for Women   First for Women First for "
    "Women is a woman's magazine published by Bauer Media Group in the USA. The magazine was "
    "started in 1989.\"\n"
    "  ]\n"
    "}\n"
    "</information>\n"
    "\n"
    "<think> From the search results: - \"Arthur's Magazine\" was published from 1844 to "
    "1846. - \"First for Women\" was started in 1989. Therefore, \"Arthur's Magazine\" was "
    "started first. </think>\n"
    "<answer> Arthur's Magazine </answer>";

}  // namespace ragloop::fixtures
