#pragma once

#include <httplib.h>

#include "ragloop/bm25.hpp"
#include "ragloop/corpus.hpp"

namespace ragloop {

// Serves the remote retriever protocol from a local store + index. POST
// /retrieve with {"queries":[...],"k":n}; malformed requests get 400. The
// store and index must outlive the server.
void attach_retriever_routes(httplib::Server& server, const PassageStore& store,
                             const Bm25Index& index, int max_parallel_queries = 3);

}  // namespace ragloop
