#include "tim/synthetic.hpp"

#include <array>
#include <random>
#include <string_view>

#include "tim/errors.hpp"

namespace tim {

namespace {

// Genitive/locative street names, as they appear after "ul." or "na".
const std::vector<std::string> kStreets = {
    "Legnickiej",   "Grabiszyńskiej", "Piłsudskiego", "Hallera",     "Ślężnej",
    "Borowskiej",   "Świdnickiej",    "Sienkiewicza", "Pułaskiego",  "Traugutta",
    "Kościuszki",   "Żmigrodzkiej",   "Krakowskiej",  "Opolskiej",   "Strzegomskiej",
    "Milenijnej",   "Lotniczej",      "Pomorskiej",   "Kamiennej",   "Bardzkiej"};

const std::vector<std::string> kStops = {
    "Kwiska",          "Zoo",           "Hala Stulecia", "Pereca",   "Dworzec Główny",
    "Galeria Dominikańska", "Arkady Capitol", "Sępolno",  "Biskupin", "Oporów"};

// Square names following "pl.".
const std::vector<std::string> kSquares = {"Grunwaldzki", "Dominikański", "Bema", "Legionów",
                                           "Strzegomski"};

const std::vector<std::string> kLines = {"2",  "3",  "4",  "5",   "6",   "8",   "9",
                                         "10", "11", "14", "15",  "17",  "20",  "23",
                                         "31", "33", "70", "74",  "106", "112", "119",
                                         "122", "125", "131", "142", "144", "149"};

const std::vector<std::string> kHours = {"5",  "6",  "7",  "8",  "9",  "10", "12", "14",
                                         "15", "16", "17", "18", "19", "21", "22"};

// Every template of a class leads with keywords that no other class uses.
const std::array<std::vector<std::string_view>, 7> kIncidentTemplates = {{
    // accident
    {
        "Zderzenie tramwaju z samochodem osobowym na ul. {street}. Tramwaje linii {line} i "
        "{line2} skierowano objazdem.",
        "Wypadek z udziałem pieszego przy przystanku {stop}. Na miejscu pracuje policja i "
        "karetka.",
        "Kolizja autobusu linii {line} z autem dostawczym na ul. {street}. Służby kierują "
        "ruchem.",
        "Potrącenie rowerzysty na przejściu przy ul. {street}. Tramwaje linii {line} zawracają "
        "na pętli {stop}.",
        "Zderzenie dwóch tramwajów przy pl. {square}. Wybrane kursy linii {line} wykonują "
        "autobusy zastępcze.",
        "Wypadek drogowy na skrzyżowaniu {street} i {street2}. Policja wyznaczyła objazd dla "
        "linii {line}.",
    },
    // event
    {
        "Mecz na stadionie przy ul. {street}. Uruchamiamy dodatkowe kursy linii {line} dla "
        "kibiców.",
        "Koncert w okolicy pl. {square}. Od godziny {hour} tramwaje linii {line} i {line2} "
        "jadą trasą zmienioną.",
        "Festiwal miejski na ul. {street}. Autobusy linii {line} omijają rynek do pętli "
        "{stop}.",
        "Maraton przebiega ulicami {street} i {street2}. Przystanek {stop} nieczynny do końca "
        "biegu.",
        "Impreza masowa przy pętli {stop}. Dodatkowe tramwaje linii {line} podstawione od "
        "godziny {hour}.",
        "Jarmark na pl. {square}. Autobusy linii {line} i {line2} kursują częściej dla "
        "uczestników.",
    },
    // fix
    {
        "Usunięto przeszkodę na ul. {street}. Tramwaje linii {line} wróciły na stałe trasy.",
        "Ruch przywrócony przy pl. {square}. Kursowanie odbywa się zgodnie z rozkładem.",
        "Zakończono działania służb na skrzyżowaniu {street} i {street2}. Autobusy linii "
        "{line} wracają na swoje trasy.",
        "Przywrócono kursowanie tramwajów linii {line} przez ul. {street}. Dziękujemy za "
        "cierpliwość.",
        "Naprawiono infrastrukturę przy przystanku {stop}. Linie {line} i {line2} kursują "
        "ponownie normalnie.",
        "Po godzinie {hour} ruch tramwajowy na ul. {street} odbywa się już bez zakłóceń, "
        "objazd zakończony.",
    },
    // incident
    {
        "Zatrzymanie ruchu tramwajowego na ul. {street}. Linie {line} i {line2} oczekują na "
        "przejazd.",
        "Blokada torów przy pl. {square}. Tramwaje linii {line} stoją w obu kierunkach.",
        "Brak przejazdu przez skrzyżowanie {street} i {street2}. Autobusy linii {line} "
        "zawieszone do odwołania.",
        "Obce pojazdy zablokowały torowisko na ul. {street}. Wstrzymany ruch linii {line} w "
        "kierunku pętli {stop}.",
        "Zatrzymanie kursowania autobusów linii {line} przy przystanku {stop} z powodu "
        "zdarzenia drogowego.",
        "Wstrzymany ruch w obu kierunkach na ul. {street}. Pasażerowie proszeni o korzystanie "
        "z linii {line2}.",
    },
    // malfunction
    {
        "Awaria zwrotnicy na ul. {street}. Tramwaje linii {line} i {line2} skierowano na "
        "objazd.",
        "Usterka tramwaju linii {line} przy przystanku {stop}. Wagon oczekuje na pomoc "
        "techniczną.",
        "Awaria sieci trakcyjnej na odcinku od ul. {street} do pętli {stop}. Kursowanie "
        "tramwajów przerwane.",
        "Defekt pantografu w tramwaju linii {line} na pl. {square}. Pogotowie techniczne w "
        "drodze.",
        "Uszkodzenie rozjazdu na skrzyżowaniu {street} i {street2}. Linie {line} kierowane "
        "przez centrum.",
        "Usterka zwrotnicy przy pętli {stop} ogranicza ruch tramwajów linii {line} i {line2}.",
    },
    // renovation
    {
        "Remont torowiska na ul. {street}. Tramwaje linii {line} i {line2} kursują objazdem "
        "przez całe wakacje.",
        "Prace torowe przy pl. {square}. Nocne kursy linii {line} odwołane na czas robót.",
        "Modernizacja przystanku {stop}. Autobusy linii {line} zatrzymują się na tymczasowym "
        "peronie.",
        "Roboty drogowe na skrzyżowaniu {street} i {street2}. Przewidziane zwężenia dla "
        "autobusów linii {line}.",
        "Przebudowa ul. {street} rozpoczęta. Objazdy dla linii {line} i {line2} obowiązują na "
        "czas inwestycji.",
        "Remont nawierzchni przy pętli {stop}. Autobusy linii {line} podjeżdżają do "
        "tymczasowego stanowiska.",
    },
    // unknown
    {
        "Utrudnienia w kursowaniu linii {line} w rejonie ul. {street}. Prosimy o "
        "wyrozumiałość.",
        "Opóźnienia kursów linii {line} i {line2} sięgają kilkunastu minut w rejonie pl. "
        "{square}.",
        "Utrudnienia na trasie linii {line}. Szczegóły wkrótce, monitorujemy sytuację na "
        "bieżąco.",
        "Możliwe opóźnienia w rejonie przystanku {stop} po godzinie {hour}. Przepraszamy za "
        "niedogodności.",
        "Niedogodności w rejonie ul. {street}. Kolejne komunikaty wkrótce.",
        "Opóźnienia linii {line} w okolicach pętli {stop}. Przyczyna ustalana, przepraszamy "
        "pasażerów.",
    },
}};

// Sentiment classes keep strictly disjoint token sets, including function
// words, so a bag-of-words model can separate them cleanly.
const std::array<std::vector<std::string_view>, 3> kSentimentTemplates = {{
    // positive
    {
        "świetna robota dziękuję za szybką informację",
        "brawo za błyskawiczną reakcję tak trzymać",
        "super doceniam że informujecie natychmiast",
        "gratulacje sprawnie działacie pełen profesjonalizm",
        "rewelacyjnie szybka pomoc miła obsługa dziękuję",
        "wspaniała obsługa pochwała dla całej ekipy",
        "dobra robota tak trzymać ekipo mpk",
        "doceniam zaangażowanie świetna obsługa dziękuję bardzo",
    },
    // neutral
    {
        "kiedy planowane wznowienie kursowania linii czternaście",
        "którędy jedzie teraz tramwaj numer cztery",
        "rozumiem czekam cierpliwie aż ruch wróci",
        "gdzie zatrzymuje się autobus zastępczy proszę podać przystanek",
        "informacja przyjęta do wiadomości sprawdzę rozkład jazdy",
        "czy objazd obejmuje również przystanek dworcowy",
        "ile potrwa przerwa w ruchu tramwajów",
        "jaka jest trasa objazdu autobusu sto dwadzieścia",
    },
    // negative
    {
        "skandal znowu stoję pół godziny bez tramwaju",
        "masakra ciągłe awarie żenada kompletna porażka",
        "nic nie działa najgorsza komunikacja miejska jaką znam",
        "fatalna organizacja zero konkretów wstyd panowie",
        "spóźniłem pół godziny przez was okropne zarządzanie",
        "dramat kolejny dzień bez sprawnej komunikacji wstyd",
        "beznadziejny przewoźnik nikt niczego nie wie",
        "żenada tyle czekania odwołane kursy bez uprzedzenia",
    },
}};

size_t pick(std::mt19937_64& rng, size_t n) {
    return static_cast<size_t>(rng() % n);
}

const std::string& pick_from(std::mt19937_64& rng, const std::vector<std::string>& list) {
    return list[pick(rng, list.size())];
}

// Distinct second pick for {street2}/{line2} slots.
const std::string& pick_other(std::mt19937_64& rng, const std::vector<std::string>& list,
                              const std::string& first) {
    const std::string* value = &pick_from(rng, list);
    while (*value == first) value = &pick_from(rng, list);
    return *value;
}

std::string fill_template(std::string_view tmpl, std::mt19937_64& rng) {
    std::string out;
    out.reserve(tmpl.size() + 16);
    std::string street, line;
    size_t pos = 0;
    while (pos < tmpl.size()) {
        size_t open = tmpl.find('{', pos);
        if (open == std::string_view::npos) {
            out += tmpl.substr(pos);
            break;
        }
        out += tmpl.substr(pos, open - pos);
        size_t close = tmpl.find('}', open);
        std::string_view slot = tmpl.substr(open + 1, close - open - 1);
        if (slot == "street") {
            street = pick_from(rng, kStreets);
            out += street;
        } else if (slot == "street2") {
            out += pick_other(rng, kStreets, street);
        } else if (slot == "stop") {
            out += pick_from(rng, kStops);
        } else if (slot == "square") {
            out += pick_from(rng, kSquares);
        } else if (slot == "line") {
            line = pick_from(rng, kLines);
            out += line;
        } else if (slot == "line2") {
            out += pick_other(rng, kLines, line);
        } else if (slot == "hour") {
            out += pick_from(rng, kHours);
        } else {
            throw InputError("unknown template slot '" + std::string(slot) + "'");
        }
        pos = close + 1;
    }
    return out;
}

template <size_t N>
std::vector<LabeledDoc> generate(const std::array<std::vector<std::string_view>, N>& families,
                                 const std::vector<std::string>& labels, size_t per_class,
                                 uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<LabeledDoc> docs;
    docs.reserve(per_class * N);
    for (size_t i = 0; i < per_class * N; ++i) {
        const size_t cls = i % N;
        const auto& family = families[cls];
        std::string_view tmpl = family[pick(rng, family.size())];
        docs.push_back({fill_template(tmpl, rng), labels[cls]});
    }
    return docs;
}

}  // namespace

std::vector<LabeledDoc> generate_incident_corpus(size_t per_class, uint64_t seed) {
    return generate(kIncidentTemplates, kIncidentLabels, per_class, seed);
}

std::vector<LabeledDoc> generate_sentiment_corpus(size_t per_class, uint64_t seed) {
    return generate(kSentimentTemplates, kSentimentLabels, per_class, seed);
}

}  // namespace tim
