#!/usr/bin/env python3
"""Builds the synthetic evaluation corpus and matcher fixtures.

Paraphrases are produced mechanically: word substitutions from a fixed
synonym table at an increasing rate, plus structural edits (additions,
deletions, merges, splits, segment exchanges, reordering) recorded in gold
alignment maps as they are applied. Output is deterministic.

usage: gen_synthetic_corpus.py [OUTPUT_ROOT]   (default: corpus/)
"""

import os
import random
import re
import sys

SOURCE = [
    "Der Baumkuchen ist eine besondere Spezialität aus Deutschland und gilt als König der Kuchen.",
    "Seinen Namen verdankt das Gebäck den hellen und dunklen Ringen, die an die Jahresringe eines Baumes erinnern.",
    "Die ersten Rezepte stammen aus dem späten Mittelalter und wurden in alten Kochbüchern überliefert.",
    "Damals wurde der Teig über einem offenen Feuer auf eine drehende Walze gegossen.",
    "Heute backen Konditoren den Kuchen in speziellen Öfen mit einer beweglichen Welle.",
    "Für den Teig braucht man Butter, Zucker, Eier, Mehl und eine kleine Menge Marzipan.",
    "Die Eier werden getrennt und das Eiweiß wird zu festem Schnee geschlagen.",
    "Anschließend rührt man Butter und Zucker lange schaumig, bis eine helle Masse entsteht.",
    "Jede Schicht wird dünn aufgetragen und bei großer Hitze wenige Minuten gebacken.",
    "Nach dem Backen entsteht so ein Kuchen mit bis zu zwanzig feinen Schichten.",
    "Der fertige Kuchen wird mit einer Glasur aus Schokolade oder Zucker überzogen.",
    "Viele Bäckereien verkaufen den Baumkuchen besonders gern in der Weihnachtszeit.",
    "Die Stadt Salzwedel in der Altmark ist für ihre traditionelle Herstellung bekannt.",
    "Dort arbeiten mehrere Betriebe noch heute nach den historischen Verfahren.",
    "Auch in Cottbus und Dresden hat das Gebäck eine lange Geschichte.",
    "In Japan ist der Kuchen unter dem Namen Baumkuchen sehr beliebt und wird in großen Mengen produziert.",
    "Ein deutscher Konditor brachte das Rezept nach dem Ersten Weltkrieg in das Land.",
    "Dort gilt das Gebäck bis heute als typisches Geschenk zu Hochzeiten.",
    "Die Herstellung ist aufwendig, weil jede Schicht einzeln gebacken werden muss.",
    "Deshalb ist echter Baumkuchen meist teurer als gewöhnlicher Kuchen.",
]

# Related sentences used as added phrases in paraphrases.
ADDITIONS = [
    "Manche Rezepte verlangen zusätzlich Rum oder Zitronenschale.",
    "Der Anschnitt zeigt die typischen Ringe besonders deutlich.",
    "Kleine Stücke werden auch als Baumkuchenspitzen angeboten.",
    "Ein guter Kuchen bleibt mehrere Wochen frisch.",
    "Zur Tasse Kaffee wird das Gebäck gern in dünnen Scheiben serviert.",
    "Für Touristen gibt es in einigen Orten sogar Schaubäckereien.",
    "Das Backen erfordert viel Erfahrung und eine ruhige Hand.",
]

UNRELATED = [
    "Die Eisenbahn verbindet seit dem neunzehnten Jahrhundert viele Städte miteinander.",
    "Der erste Zug fuhr im Jahr 1835 zwischen Nürnberg und Fürth.",
    "Die Lokomotive wurde damals noch mit Kohle und Wasser betrieben.",
    "Heute fahren die meisten Züge elektrisch über eine Oberleitung.",
    "Ein moderner Schnellzug erreicht Geschwindigkeiten von über dreihundert Kilometern pro Stunde.",
    "Auf großen Bahnhöfen halten täglich mehrere hundert Verbindungen.",
    "Reisende kaufen ihre Fahrkarten am Automaten oder im Internet.",
    "Im Winter verursachen Schnee und Eis häufig Verspätungen.",
    "Die Gleise müssen regelmäßig kontrolliert und repariert werden.",
    "Signale und Stellwerke sorgen für einen sicheren Betrieb.",
    "Güterzüge transportieren Container, Holz, Stahl und Autos.",
    "Viele Pendler nutzen jeden Morgen die Regionalbahn zur Arbeit.",
    "In den Bergen überwinden Zahnradbahnen steile Steigungen.",
    "Lange Tunnel führen unter Flüssen und Gebirgen hindurch.",
    "Der Fahrplan ändert sich meistens im Dezember.",
    "Schaffner prüfen während der Fahrt die Tickets der Fahrgäste.",
    "Im Speisewagen gibt es warme Gerichte und Getränke.",
    "Nachtzüge bieten Schlafabteile für längere Strecken an.",
    "Eisenbahnmuseen zeigen historische Dampflokomotiven und alte Waggons.",
    "Modellbahnen sind ein verbreitetes Hobby für Jung und Alt.",
    "Der Ausbau neuer Strecken dauert oft viele Jahre.",
    "Barrierefreie Bahnsteige erleichtern älteren Menschen das Einsteigen.",
    "Der Lärm vorbeifahrender Züge stört manche Anwohner.",
    "Internationale Verbindungen führen nach Paris, Wien und Amsterdam.",
    "Elektronische Anzeigetafeln informieren über Gleiswechsel.",
]

SYNONYMS = {
    "Baumkuchen": ["Schichtkuchen", "Ringkuchen"],
    "besondere": ["spezielle", "typische"],
    "Spezialität": ["Köstlichkeit", "Delikatesse"],
    "gilt": ["zählt", "steht"],
    "König": ["Herrscher", "Fürst"],
    "Kuchen": ["Torte", "Backware"],
    "Namen": ["Titel", "Bezeichnung"],
    "verdankt": ["schuldet", "erhält"],
    "Gebäck": ["Backwerk", "Naschwerk"],
    "hellen": ["lichten", "blassen"],
    "dunklen": ["finsteren", "braunen"],
    "Ringen": ["Kreisen", "Reifen"],
    "erinnern": ["denken lassen", "gemahnen"],
    "Jahresringe": ["Wachstumsringe", "Holzringe"],
    "Baumes": ["Stammes", "Holzes"],
    "ersten": ["frühesten", "ältesten"],
    "Rezepte": ["Anleitungen", "Vorschriften"],
    "stammen": ["kommen", "rühren"],
    "späten": ["ausgehenden", "letzten"],
    "alten": ["historischen", "betagten"],
    "Kochbüchern": ["Rezeptsammlungen", "Handschriften"],
    "überliefert": ["bewahrt", "aufgeschrieben"],
    "Damals": ["Früher", "Einst"],
    "Teig": ["Brei", "Rührteig"],
    "offenen": ["freien", "lodernden"],
    "Feuer": ["Herd", "Flammen"],
    "drehende": ["rotierende", "kreisende"],
    "Walze": ["Rolle", "Spindel"],
    "gegossen": ["geschüttet", "gestrichen"],
    "Heute": ["Gegenwärtig", "Inzwischen"],
    "heute": ["gegenwärtig", "immer"],
    "backen": ["fertigen", "produzieren"],
    "Konditoren": ["Zuckerbäcker", "Bäcker"],
    "speziellen": ["besonderen", "eigenen"],
    "Öfen": ["Backöfen", "Apparaten"],
    "beweglichen": ["drehbaren", "rotierenden"],
    "Welle": ["Achse", "Stange"],
    "braucht": ["benötigt", "verwendet"],
    "Butter": ["Fett", "Süßrahmbutter"],
    "Zucker": ["Puderzucker", "Rohrzucker"],
    "Eier": ["Hühnereier", "Eidotter"],
    "Mehl": ["Weizenmehl", "Stärke"],
    "kleine": ["geringe", "winzige"],
    "Menge": ["Portion", "Prise"],
    "Marzipan": ["Mandelmasse", "Persipan"],
    "getrennt": ["geteilt", "aufgeschlagen"],
    "Eiweiß": ["Eiklar", "Klar"],
    "festem": ["steifem", "hartem"],
    "Schnee": ["Eischnee", "Schaum"],
    "geschlagen": ["aufgeschlagen", "verquirlt"],
    "Anschließend": ["Danach", "Dann"],
    "rührt": ["schlägt", "mischt"],
    "lange": ["ausgiebig", "kräftig"],
    "schaumig": ["cremig", "luftig"],
    "helle": ["lichte", "blasse"],
    "Masse": ["Creme", "Mischung"],
    "entsteht": ["bildet sich", "ergibt sich"],
    "Jede": ["Jegliche", "Eine jede"],
    "jede": ["jegliche", "eine jede"],
    "Schicht": ["Lage", "Ebene"],
    "dünn": ["fein", "hauchdünn"],
    "aufgetragen": ["verteilt", "aufgestrichen"],
    "großer": ["hoher", "starker"],
    "Hitze": ["Temperatur", "Glut"],
    "wenige": ["einige", "nur ein paar"],
    "Minuten": ["Augenblicke", "Momente"],
    "gebacken": ["gegart", "gebräunt"],
    "Backen": ["Garen", "Backvorgang"],
    "zwanzig": ["20", "zwei Dutzend"],
    "feinen": ["dünnen", "zarten"],
    "Schichten": ["Lagen", "Ebenen"],
    "fertige": ["fertiggestellte", "gebackene"],
    "Glasur": ["Kuvertüre", "Überzug"],
    "Schokolade": ["Kakao", "Zartbitterschokolade"],
    "überzogen": ["bedeckt", "umhüllt"],
    "Viele": ["Zahlreiche", "Etliche"],
    "Bäckereien": ["Konditoreien", "Backstuben"],
    "verkaufen": ["vertreiben", "bieten"],
    "besonders": ["vor allem", "hauptsächlich"],
    "gern": ["häufig", "oft"],
    "Weihnachtszeit": ["Adventszeit", "Vorweihnachtszeit"],
    "Stadt": ["Gemeinde", "Kleinstadt"],
    "traditionelle": ["überlieferte", "altbewährte"],
    "Herstellung": ["Produktion", "Fertigung"],
    "bekannt": ["berühmt", "angesehen"],
    "Dort": ["Da", "An diesem Ort"],
    "arbeiten": ["produzieren", "wirken"],
    "mehrere": ["einige", "verschiedene"],
    "Betriebe": ["Firmen", "Unternehmen"],
    "historischen": ["alten", "überlieferten"],
    "Verfahren": ["Methoden", "Techniken"],
    "Auch": ["Ebenso", "Gleichfalls"],
    "Geschichte": ["Tradition", "Vergangenheit"],
    "Japan": ["Ostasien", "Fernost"],
    "beliebt": ["geschätzt", "populär"],
    "großen": ["riesigen", "erheblichen"],
    "Mengen": ["Stückzahlen", "Massen"],
    "produziert": ["hergestellt", "erzeugt"],
    "deutscher": ["aus Deutschland stammender", "norddeutscher"],
    "Konditor": ["Bäcker", "Zuckerbäcker"],
    "brachte": ["trug", "führte"],
    "Rezept": ["Verfahren", "Wissen"],
    "Weltkrieg": ["großen Krieg", "Krieg"],
    "Land": ["Inselreich", "Kaiserreich"],
    "typisches": ["übliches", "klassisches"],
    "Geschenk": ["Präsent", "Mitbringsel"],
    "Hochzeiten": ["Trauungen", "Feiern"],
    "aufwendig": ["mühsam", "zeitraubend"],
    "einzeln": ["separat", "für sich"],
    "Deshalb": ["Darum", "Daher"],
    "echter": ["originaler", "wahrer"],
    "meist": ["oft", "in der Regel"],
    "teurer": ["kostspieliger", "preisintensiver"],
    "gewöhnlicher": ["normaler", "einfacher"],
}

WORD = re.compile(r"\w+", re.UNICODE)


def substitute(text, rate, rng):
    """Replaces eligible words with probability `rate`; at least one always."""
    spans = [m for m in WORD.finditer(text) if m.group(0) in SYNONYMS]
    if not spans:
        raise ValueError("no substitutable word in: " + text)
    chosen = [m for m in spans if rng.random() < rate]
    if not chosen:
        chosen = [rng.choice(spans)]
    out = []
    last = 0
    for m in chosen:
        out.append(text[last:m.start()])
        out.append(rng.choice(SYNONYMS[m.group(0)]))
        last = m.end()
    out.append(text[last:])
    return "".join(out)


def strip_end(text):
    return text.rstrip(".!?")


def halves(text):
    words = strip_end(text).split(" ")
    mid = len(words) // 2
    return " ".join(words[:mid]), " ".join(words[mid:])


class Unit:
    """One target phrase and the source phrases whose meaning it carries."""

    def __init__(self, text, sources):
        self.text = text
        self.sources = sorted(set(sources))


def build(rng, rate, deletions=0, additions=0, merges=0, splits=0,
          exchanges=0, moves=0):
    units = [Unit(t, [i]) for i, t in enumerate(SOURCE)]

    # segment exchange between two adjacent phrases: both sources end up
    # in both targets
    for _ in range(exchanges):
        candidates = [k for k in range(len(units) - 1)
                      if len(units[k].sources) == 1 and len(units[k + 1].sources) == 1]
        k = rng.choice(candidates)
        a, b = units[k], units[k + 1]
        a1, a2 = halves(a.text)
        b1, b2 = halves(b.text)
        pair = a.sources + b.sources
        units[k:k + 2] = [Unit(a1 + " " + b2 + ".", pair), Unit(b1 + " " + a2 + ".", pair)]

    for _ in range(merges):
        candidates = [k for k in range(len(units) - 1)
                      if len(units[k].sources) == 1 and len(units[k + 1].sources) == 1
                      and units[k].sources != units[k + 1].sources]
        k = rng.choice(candidates)
        a, b = units[k], units[k + 1]
        merged = strip_end(a.text) + ", und " + b.text[0].lower() + b.text[1:]
        units[k:k + 2] = [Unit(merged, a.sources + b.sources)]

    for _ in range(splits):
        candidates = [k for k, u in enumerate(units)
                      if len(u.sources) == 1 and len(u.text.split()) >= 8
                      and sum(1 for v in units if v.sources == u.sources) == 1]
        k = rng.choice(candidates)
        first, second = halves(units[k].text)
        second = second[0].upper() + second[1:]
        src = units[k].sources
        units[k:k + 1] = [Unit(first + ".", src), Unit("Dabei gilt: " + second + ".", src)]

    for _ in range(deletions):
        candidates = [k for k, u in enumerate(units)
                      if len(u.sources) == 1
                      and sum(1 for v in units if v.sources == u.sources) == 1]
        del units[rng.choice(candidates)]

    for text in rng.sample(ADDITIONS, additions):
        units.insert(rng.randrange(len(units) + 1), Unit(text, []))

    for u in units:
        if u.sources:
            u.text = substitute(u.text, rate, rng)

    for _ in range(moves):
        u = units.pop(rng.randrange(len(units)))
        units.insert(rng.randrange(len(units) + 1), u)

    return units


def gold_map(units):
    targets = {i: [] for i in range(len(SOURCE))}
    for j, u in enumerate(units):
        for s in u.sources:
            targets[s].append(j)
    lines = []
    for s in range(len(SOURCE)):
        ts = sorted(targets[s])
        lines.append(f"{s}:" + (" " + ",".join(map(str, ts)) if ts else ""))
    return "\n".join(lines) + "\n"


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def write_doc(path, units):
    write(path, "\n".join(u.text for u in units) + "\n")


# (rate, deletions, additions, merges, splits, exchanges, moves)
BASIC = [
    (0.10, 0, 0, 0, 0, 0, 0),
    (0.13, 0, 1, 0, 0, 0, 1),
    (0.16, 1, 0, 0, 0, 0, 0),
    (0.19, 0, 0, 0, 0, 0, 2),
    (0.22, 0, 1, 0, 0, 0, 2),
]
COMPLEX = [
    (0.40, 2, 2, 1, 1, 0, 0),
    (0.45, 3, 3, 2, 2, 1, 3),
    (0.50, 3, 2, 1, 2, 0, 0),
    (0.55, 5, 5, 2, 2, 2, 4),
    (0.60, 5, 3, 2, 1, 1, 3),
]


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else "corpus"
    corpus = os.path.join(root, "synthetic")
    write(os.path.join(corpus, "source.txt"), "\n".join(SOURCE) + "\n")

    for level, specs, seed_base in (("basic", BASIC, 100), ("complex", COMPLEX, 200)):
        for k, (rate, dele, add, merge, split, exch, moves) in enumerate(specs, start=1):
            rng = random.Random(seed_base + k)
            units = build(rng, rate, dele, add, merge, split, exch, moves)
            name = f"{k:02d}"
            write_doc(os.path.join(corpus, level, name + ".txt"), units)
            write(os.path.join(corpus, "maps", f"{level}-{name}.map"), gold_map(units))

    for k in range(1, 3):
        rng = random.Random(300 + k)
        units = build(rng, 0.0)
        write_doc(os.path.join(corpus, "control", "cited", f"{k:02d}.txt"), units)

    for k in range(1, 6):
        rng = random.Random(400 + k)
        lines = rng.sample(UNRELATED, 18)
        write(os.path.join(corpus, "control", "unrelated", f"{k:02d}.txt"), "\n".join(lines) + "\n")

    # matcher fixtures: light edit + reordering, and a pure reordering
    fixtures = os.path.join(root, "fixtures", "matcher")
    write(os.path.join(fixtures, "source.txt"), "\n".join(SOURCE) + "\n")
    rng = random.Random(500)
    units = build(rng, 0.15)
    rng.shuffle(units)
    write_doc(os.path.join(fixtures, "edited.txt"), units)
    write(os.path.join(fixtures, "edited.map"), gold_map(units))
    units = [Unit(t, [i]) for i, t in enumerate(SOURCE)]
    rng.shuffle(units)
    write_doc(os.path.join(fixtures, "permuted.txt"), units)
    write(os.path.join(fixtures, "permuted.map"), gold_map(units))


if __name__ == "__main__":
    main()
