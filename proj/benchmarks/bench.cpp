#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "tim/classifier.hpp"
#include "tim/gazetteer.hpp"
#include "tim/geoparse.hpp"
#include "tim/synthetic.hpp"
#include "tim/text.hpp"

namespace {

const std::string kPost =
    "Awaria zwrotnicy na ul. Legnickiej. Tramwaje linii 4 i 5 skierowano na objazd. #AlertMPK";

tim::Gazetteer benchmark_gazetteer() {
    std::vector<tim::Toponym> entries;
    const char* names[] = {"Legnicka",     "Grabiszyńska", "Piłsudskiego", "Hallera",
                           "Borowska",     "Świdnicka",    "Lotnicza",     "Milenijna",
                           "Krzywoustego", "Opolska",      "Strzegomska",  "Pomorska"};
    double coord = 0.0;
    for (const char* name : names) {
        entries.push_back({name, tim::ToponymKind::street, 51.1 + coord, 17.0 + coord,
                           tim::ToponymSource::osm});
        coord += 0.001;
    }
    return tim::build_gazetteer(std::move(entries));
}

tim::TextModel benchmark_model() {
    tim::ClassifierConfig cfg;
    cfg.embedding_dim = 16;
    cfg.hash_buckets = 4096;
    cfg.learning_rate = 0.5;
    cfg.epochs = 10;
    cfg.seed = 1;
    return tim::train(tim::generate_incident_corpus(40, 1), tim::kIncidentLabels, cfg);
}

void BM_Tokenize(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(tim::tokenize(kPost));
    }
}
BENCHMARK(BM_Tokenize);

void BM_EditDistance(benchmark::State& state) {
    const std::string a = "grabiszyńskiej";
    const std::string b = "grabiszyńska";
    for (auto _ : state) {
        benchmark::DoNotOptimize(tim::edit_distance(a, b));
    }
}
BENCHMARK(BM_EditDistance);

void BM_GeocodePost(benchmark::State& state) {
    const tim::Gazetteer gaz = benchmark_gazetteer();
    const tim::TriggerLexicon lexicon = tim::default_trigger_lexicon();
    tim::Post post;
    post.id = "bench";
    post.text = kPost;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tim::geocode_post(post, gaz, lexicon, 0.3));
    }
}
BENCHMARK(BM_GeocodePost);

void BM_Predict(benchmark::State& state) {
    const tim::TextModel model = benchmark_model();
    for (auto _ : state) {
        benchmark::DoNotOptimize(tim::predict(model, kPost));
    }
}
BENCHMARK(BM_Predict);

void BM_Train(benchmark::State& state) {
    const std::vector<tim::LabeledDoc> corpus = tim::generate_incident_corpus(20, 3);
    tim::ClassifierConfig cfg;
    cfg.embedding_dim = 16;
    cfg.hash_buckets = 4096;
    cfg.epochs = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tim::train(corpus, tim::kIncidentLabels, cfg));
    }
}
BENCHMARK(BM_Train);

}  // namespace

BENCHMARK_MAIN();
