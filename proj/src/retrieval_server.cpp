#include "ragloop/retrieval_server.hpp"

#include <json.hpp>

#include "ragloop/retrieval.hpp"

namespace ragloop {

void attach_retriever_routes(httplib::Server& server, const PassageStore& store,
                             const Bm25Index& index, int max_parallel_queries) {
  server.Post("/retrieve", [&store, &index, max_parallel_queries](const httplib::Request& req,
                                                                  httplib::Response& res) {
    nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.contains("queries") || !body["queries"].is_array() ||
        body["queries"].empty() || !body.contains("k") || !body["k"].is_number_integer()) {
      res.status = 400;
      res.set_content(R"({"error":"expected {\"queries\":[string],\"k\":int}"})",
                      "application/json");
      return;
    }
    std::vector<std::string> queries;
    for (const auto& q : body["queries"]) {
      if (!q.is_string()) {
        res.status = 400;
        res.set_content(R"({"error":"queries must be strings"})", "application/json");
        return;
      }
      queries.push_back(q.get<std::string>());
    }
    const int k = body["k"].get<int>();
    if (k < 1 || queries.size() > static_cast<std::size_t>(max_parallel_queries)) {
      res.status = 400;
      res.set_content(R"({"error":"k must be >= 1 and queries within the batch cap"})",
                      "application/json");
      return;
    }
    LocalBm25Backend backend(store, index, max_parallel_queries);
    nlohmann::json out;
    auto& results = out["results"] = nlohmann::json::array();
    for (const auto& docs : backend.retrieve(queries, k)) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& doc : docs) {
        list.push_back({{"passage_id", doc.passage_id},
                        {"title", doc.title},
                        {"body", doc.body},
                        {"score", doc.score}});
      }
      results.push_back(std::move(list));
    }
    res.set_content(out.dump(), "application/json");
  });
}

}  // namespace ragloop
