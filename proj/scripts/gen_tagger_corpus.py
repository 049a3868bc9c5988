#!/usr/bin/env python3
# Copyright 2026 The fgrain Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the tagger training corpus from a caption grammar.

Output is one "surface<TAB>TAG" line per token with a blank line between
sentences. Tags use the coarse UD-style set understood by the tagger.
Deterministic for a given --seed.
"""

import argparse
import random

# (singular, plural). Plural None means mass noun.
NOUNS = [
    ("man", "men"), ("woman", "women"), ("person", "people"), ("child", "children"),
    ("boy", "boys"), ("girl", "girls"), ("guy", "guys"), ("lady", "ladies"),
    ("kid", "kids"), ("baby", "babies"), ("player", "players"), ("skier", "skiers"),
    ("surfer", "surfers"), ("rider", "riders"), ("couple", "couples"), ("family", "families"),
    ("dog", "dogs"), ("cat", "cats"), ("horse", "horses"), ("cow", "cows"),
    ("sheep", "sheep"), ("elephant", "elephants"), ("giraffe", "giraffes"),
    ("zebra", "zebras"), ("bear", "bears"), ("bird", "birds"), ("duck", "ducks"),
    ("kite", "kites"), ("surfboard", "surfboards"), ("skateboard", "skateboards"),
    ("snowboard", "snowboards"), ("ski", "skis"), ("frisbee", "frisbees"),
    ("ball", "balls"), ("bat", "bats"), ("glove", "gloves"), ("racket", "rackets"),
    ("racquet", "racquets"), ("bus", "buses"), ("train", "trains"), ("truck", "trucks"),
    ("car", "cars"), ("motorcycle", "motorcycles"), ("bicycle", "bicycles"),
    ("bike", "bikes"), ("boat", "boats"), ("airplane", "airplanes"), ("plane", "planes"),
    ("jet", "jets"), ("table", "tables"), ("chair", "chairs"), ("couch", "couches"),
    ("bed", "beds"), ("bench", "benches"), ("plate", "plates"), ("bowl", "bowls"),
    ("cup", "cups"), ("glass", "glasses"), ("bottle", "bottles"), ("pizza", "pizzas"),
    ("sandwich", "sandwiches"), ("cake", "cakes"), ("donut", "donuts"),
    ("banana", "bananas"), ("apple", "apples"), ("orange", "oranges"),
    ("carrot", "carrots"), ("laptop", "laptops"), ("phone", "phones"),
    ("computer", "computers"), ("keyboard", "keyboards"), ("television", "televisions"),
    ("tv", "tvs"), ("remote", "remotes"), ("book", "books"), ("clock", "clocks"),
    ("vase", "vases"), ("umbrella", "umbrellas"), ("bag", "bags"),
    ("suitcase", "suitcases"), ("tie", "ties"), ("hat", "hats"), ("shirt", "shirts"),
    ("jacket", "jackets"), ("helmet", "helmets"), ("street", "streets"),
    ("road", "roads"), ("sidewalk", "sidewalks"), ("beach", "beaches"),
    ("ocean", "oceans"), ("wave", "waves"), ("field", "fields"), ("park", "parks"),
    ("mountain", "mountains"), ("hill", "hills"), ("tree", "trees"),
    ("building", "buildings"), ("room", "rooms"), ("kitchen", "kitchens"),
    ("bathroom", "bathrooms"), ("toilet", "toilets"), ("sink", "sinks"),
    ("window", "windows"), ("door", "doors"), ("wall", "walls"), ("floor", "floors"),
    ("counter", "counters"), ("shelf", "shelves"), ("desk", "desks"),
    ("fence", "fences"), ("pole", "poles"), ("sign", "signs"), ("light", "lights"),
    ("track", "tracks"), ("station", "stations"), ("runway", "runways"),
    ("city", "cities"), ("river", "rivers"), ("lake", "lakes"), ("crowd", "crowds"),
    ("game", "games"), ("slice", "slices"), ("piece", "pieces"), ("group", "groups"),
    ("herd", "herds"), ("bunch", "bunches"), ("picture", "pictures"),
    ("photo", "photos"), ("view", "views"), ("board", "boards"), ("court", "courts"),
    ("stove", "stoves"), ("oven", "ovens"), ("refrigerator", "refrigerators"),
    ("fridge", "fridges"), ("cabinet", "cabinets"), ("mirror", "mirrors"),
    ("lamp", "lamps"), ("pillow", "pillows"), ("blanket", "blankets"),
    ("tower", "towers"), ("bridge", "bridges"), ("hydrant", "hydrants"),
    ("box", "boxes"), ("basket", "baskets"), ("fork", "forks"), ("knife", "knives"),
    ("spoon", "spoons"), ("pan", "pans"), ("tray", "trays"), ("napkin", "napkins"),
    ("hand", "hands"), ("head", "heads"), ("mouth", "mouths"), ("leg", "legs"),
    ("teddy", "teddies"), ("animal", "animals"), ("vehicle", "vehicles"),
    ("boat", "boats"), ("flower", "flowers"), ("rock", "rocks"), ("pen", "pens"),
    ("yard", "yards"), ("lot", "lots"), ("shore", "shores"), ("dock", "docks"),
    ("pool", "pools"), ("path", "paths"), ("trail", "trails"), ("stand", "stands"),
    ("store", "stores"), ("shop", "shops"), ("restaurant", "restaurants"),
    ("office", "offices"), ("player", "players"), ("catcher", "catchers"),
    ("pitcher", "pitchers"), ("batter", "batters"), ("umpire", "umpires"),
    ("uniform", "uniforms"), ("jersey", "jerseys"), ("cart", "carts"),
    ("wagon", "wagons"), ("tent", "tents"), ("flag", "flags"), ("statue", "statues"),
    ("tub", "tubs"), ("shower", "showers"), ("towel", "towels"), ("curtain", "curtains"),
    ("monitor", "monitors"), ("screen", "screens"), ("mouse", "mice"),
    ("meal", "meals"), ("dish", "dishes"), ("salad", "salads"), ("dessert", "desserts"),
    ("cookie", "cookies"), ("hotdog", "hotdogs"), ("cone", "cones"),
    ("water", None), ("grass", None), ("snow", None), ("food", None),
    ("broccoli", None), ("sand", None), ("dirt", None), ("traffic", None),
    ("tennis", None), ("baseball", None), ("soccer", None), ("football", None),
    ("coffee", None), ("wine", None), ("rice", None), ("meat", None), ("cheese", None),
    ("furniture", None), ("luggage", None), ("sunlight", None), ("rain", None),
]

# Nouns that commonly act as compound modifiers before another noun.
MODIFIER_NOUNS = ["tennis", "baseball", "soccer", "fire", "stop", "street", "kitchen",
                  "bathroom", "city", "traffic", "train", "bus", "pizza", "ski", "water",
                  "snow", "living", "dining", "computer", "cell", "teddy", "police",
                  "passenger", "parking", "coffee", "birthday", "school", "toilet",
                  "window", "tree", "dog", "flower", "ice", "cream", "picnic", "wedding",
                  "baby", "brick", "stone", "glass"]

ADJS = ["red", "white", "black", "blue", "green", "yellow", "brown", "pink", "gray",
        "grey", "purple", "orange", "large", "small", "big", "little", "young", "old",
        "tall", "open", "empty", "full", "wooden", "metal", "busy", "cloudy", "sunny",
        "colorful", "dirty", "clean", "dark", "bright", "snowy", "grassy", "giant",
        "double", "hot", "cold", "fresh", "long", "short", "pretty", "cute", "happy",
        "new", "different", "various", "tiny", "huge", "modern", "narrow", "wide",
        "crowded", "outdoor", "indoor", "professional", "male", "female", "elderly",
        "adult", "plastic", "silver", "striped",
        "calm", "rocky", "sandy", "tropical", "delicious", "healthy", "wet", "dry",
        "heavy", "light", "low", "high", "single", "many", "several", "few", "other",
        "same", "nice", "beautiful", "large", "shiny", "vintage", "fancy", "quiet"]
ADJ_BEFORE_NOUN = [a for a in ADJS if a not in ("many", "several", "few", "other", "same")]

# (ing, 3sg, transitive)
VERBS = [
    ("riding", "rides", True), ("holding", "holds", True), ("sitting", "sits", False),
    ("standing", "stands", False), ("walking", "walks", False),
    ("playing", "plays", True), ("eating", "eats", True), ("flying", "flies", True),
    ("looking", "looks", False), ("carrying", "carries", True),
    ("wearing", "wears", True), ("laying", "lays", False), ("lying", "lies", False),
    ("talking", "talks", False), ("taking", "takes", True), ("driving", "drives", True),
    ("running", "runs", False), ("swinging", "swings", True), ("hitting", "hits", True),
    ("throwing", "throws", True), ("catching", "catches", True),
    ("watching", "watches", True), ("waiting", "waits", False),
    ("crossing", "crosses", True), ("using", "uses", True), ("cutting", "cuts", True),
    ("grazing", "grazes", False), ("posing", "poses", False), ("smiling", "smiles", False),
    ("jumping", "jumps", False), ("skiing", "skis", False), ("surfing", "surfs", False),
    ("skateboarding", "skateboards", False), ("preparing", "prepares", True),
    ("drinking", "drinks", True), ("reading", "reads", True), ("sleeping", "sleeps", False),
    ("resting", "rests", False), ("feeding", "feeds", True), ("petting", "pets", True),
    ("pulling", "pulls", True), ("pushing", "pushes", True), ("serving", "serves", True),
    ("kicking", "kicks", True), ("leaning", "leans", False), ("heading", "heads", False),
    ("traveling", "travels", False), ("going", "goes", False), ("making", "makes", True),
    ("cooking", "cooks", True), ("sharing", "shares", True), ("chasing", "chases", True),
    ("moving", "moves", False), ("floating", "floats", False), ("hanging", "hangs", False),
    ("parked", "parks", False), ("climbing", "climbs", True), ("petting", "pets", True),
    ("brushing", "brushes", True), ("showing", "shows", True), ("dancing", "dances", False),
    ("shopping", "shops", False), ("selling", "sells", True), ("filling", "fills", True),
    ("touching", "touches", True), ("licking", "licks", True), ("biting", "bites", True),
    ("approaching", "approaches", True), ("passing", "passes", True),
    ("leaving", "leaves", True), ("entering", "enters", True), ("pointing", "points", False),
    ("working", "works", False), ("smoking", "smokes", True), ("texting", "texts", False),
    ("swimming", "swims", False), ("paddling", "paddles", True), ("rowing", "rows", True),
    ("tossing", "tosses", True), ("blowing", "blows", True), ("celebrating", "celebrates", True),
]
VERBS = [v for v in VERBS if v[0] != "parked"]

PARTICIPLES = ["parked", "filled", "covered", "topped", "stacked", "dressed", "made",
               "loaded", "surrounded", "decorated", "lined", "painted", "placed",
               "attached", "mounted", "displayed", "packed", "piled", "tied",
               "perched", "seated", "stopped", "lit", "shaped", "set"]

PREPS = ["on", "in", "at", "with", "near", "by", "under", "behind", "beside", "above",
         "over", "across", "along", "through", "into", "onto", "inside", "of", "for",
         "from", "down", "around", "past", "toward", "towards", "against", "between",
         "outside", "underneath", "beneath", "atop", "among", "during", "off", "up",
         "like", "without", "alongside"]
PLACE_PREPS = ["on", "in", "at", "near", "by", "under", "behind", "beside", "next",
               "in front of", "on top of", "across", "along", "inside", "outside",
               "down", "around", "atop", "against", "underneath", "over"]

DETS_SG = ["a", "the", "this", "that", "one", "another", "each", "every", "his",
           "her", "their", "its", "my", "some"]
DETS_PL = ["the", "some", "two", "three", "four", "five", "several", "many", "these",
           "those", "their", "his", "her", "a few", "a couple of", "a group of",
           "a bunch of", "a herd of", "a pair of", "lots of", "six", "2", "3", "10",
           "all", "both", "no", "other", "various"]
DET_TAG = {
    "a": "DET", "an": "DET", "the": "DET", "this": "DET", "that": "DET", "these": "DET",
    "those": "DET", "another": "DET", "each": "DET", "every": "DET", "some": "DET",
    "all": "DET", "both": "DET", "no": "DET", "any": "DET",
    "his": "PRON", "her": "PRON", "their": "PRON", "its": "PRON", "my": "PRON",
    "our": "PRON", "your": "PRON",
    "one": "NUM", "two": "NUM", "three": "NUM", "four": "NUM", "five": "NUM",
    "six": "NUM", "2": "NUM", "3": "NUM", "10": "NUM",
    "several": "ADJ", "many": "ADJ", "few": "ADJ", "other": "ADJ", "various": "ADJ",
}
NUMS = {"two", "three", "four", "five", "six", "2", "3", "10"}

PROPER = [["New", "York"], ["Christmas"], ["London"], ["Delta"], ["Amtrak"], ["Nintendo"],
          ["Wii"], ["San", "Francisco"], ["Paris"], ["Japan"], ["Starbucks"],
          ["Central", "Park"], ["Coca", "Cola"], ["Mario"], ["Chicago"], ["Halloween"]]

SUBJ_PRONOUNS = [("he", "is"), ("she", "is"), ("it", "is"), ("they", "are"),
                 ("someone", "is"), ("He", "is"), ("She", "is"), ("They", "are"),
                 ("It", "is")]
ADVERBS = ["together", "outside", "away", "very", "there", "here", "down", "back",
           "around", "nearby", "outdoors", "inside", "closely", "quickly", "slowly",
           "high", "also", "just", "still", "really", "almost", "alone", "upside"]


def base_form(v3):
    if v3 == "lies":
        return "lie"
    if v3.endswith("ies"):
        return v3[:-3] + "y"
    if v3.endswith(("ches", "shes", "sses", "xes", "oes")):
        return v3[:-2]
    return v3[:-1]


class Gen:
    def __init__(self, rng):
        self.r = rng

    def pick(self, xs):
        return self.r.choice(xs)

    def chance(self, p):
        return self.r.random() < p

    def noun_head(self, plural=None):
        while True:
            sg, pl = self.pick(NOUNS)
            if plural is None:
                plural = pl is not None and self.chance(0.35)
            if plural and pl is None:
                continue
            return (pl if plural else sg), plural, pl is None

    def np(self, plural=None, allow_pp=True, allow_det=True):
        head, plural, mass = self.noun_head(plural)
        out = []
        if allow_det:
            if plural:
                det = self.pick(DETS_PL) if self.chance(0.85) else None
            elif mass:
                det = self.pick(["the", "some", "", "", "his", "her"]) or None
            else:
                det = self.pick(DETS_SG)
            if det:
                for i, w in enumerate(det.split()):
                    if det.startswith("a ") and i > 0:
                        out.append((w, "ADJ" if w == "few" else ("NOUN" if w in ("couple", "group", "bunch", "herd", "pair", "lots") else "ADP")))
                    elif w == "lots":
                        out.append((w, "NOUN"))
                    elif w == "of":
                        out.append((w, "ADP"))
                    else:
                        out.append((w, DET_TAG.get(w, "DET")))
        n_adj = self.r.choice([0, 0, 0, 1, 1, 2])
        for _ in range(n_adj):
            a = self.pick(ADJ_BEFORE_NOUN)
            if self.chance(0.08):
                out.append(("very", "ADV"))
            out.append((a, "ADJ"))
            if n_adj == 2 and self.chance(0.25):
                out.append(("and", "CONJ"))
                out.append((self.pick(ADJ_BEFORE_NOUN), "ADJ"))
                break
        if self.chance(0.2):
            out.append((self.pick(MODIFIER_NOUNS), "NOUN"))
        out.append((head, "NOUN"))
        # a -> an before vowels
        if out and out[0][0] == "a" and out[1][0][0] in "aeiou":
            out[0] = ("an", "DET")
        if allow_pp and self.chance(0.25):
            out += self.pp(nested=False)
        return out, plural

    def proper_np(self):
        name = self.pick(PROPER)
        out = [("the", "DET")] if self.chance(0.4) else []
        out += [(w, "PROPN") for w in name]
        if self.chance(0.6):
            out.append((self.pick(["train", "airplane", "bus", "sign", "tree", "store",
                                   "game", "skyline", "street", "station"]), "NOUN"))
        return out

    def object_np(self):
        if self.chance(0.06):
            return self.proper_np()
        if self.chance(0.06):
            return [(self.pick(["it", "them", "something", "him", "her"]), "PRON")]
        return self.np(allow_pp=self.chance(0.5))[0]

    def pp(self, nested=True):
        p = self.pick(PLACE_PREPS + PREPS[:20])
        out = []
        if p == "next":
            out += [("next", "ADV"), ("to", "ADP")]
        elif p == "in front of":
            out += [("in", "ADP"), ("front", "NOUN"), ("of", "ADP")]
        elif p == "on top of":
            out += [("on", "ADP"), ("top", "NOUN"), ("of", "ADP")]
        else:
            out.append((p, "ADP"))
        if self.chance(0.05):
            out += self.proper_np()
        else:
            out += self.np(allow_pp=nested and self.chance(0.3))[0]
        return out

    def vp_ing(self):
        ing, _, trans = self.pick(VERBS)
        out = [(ing, "VERB")]
        if ing in ("picking", "looking") and self.chance(0.3):
            out.append(("up", "ADP"))
        if trans and self.chance(0.85):
            if self.chance(0.08):
                out += [("up", "ADP")]
            out += self.object_np()
        if self.chance(0.12):
            out.append((self.pick(["together", "outside", "around", "away", "down",
                                   "nearby", "alone", "closely", "quickly"]), "ADV"))
        if self.chance(0.55):
            out += self.pp()
        if self.chance(0.08):
            out += [("while", "CONJ")] + self.vp_ing_simple()
        if self.chance(0.06):
            out += [("to", "PART"), (self.pick(["catch", "hit", "eat", "cross", "get",
                                                "see", "board", "play", "take", "make",
                                                "go", "ride", "watch", "buy", "cut"]),
                                     "VERB")] + self.object_np()
        return out

    def predicate_tail(self):
        r = self.r.random()
        if r < 0.25:
            return []
        if r < 0.4:
            return [(self.pick(["together", "outside", "away", "fast", "quickly",
                                "slowly", "home", "again", "around"]), "ADV")]
        return self.pp()

    def vp_ing_simple(self):
        ing, _, trans = self.pick(VERBS)
        out = [(ing, "VERB")]
        if trans:
            out += self.object_np()
        return out

    def finish(self, toks):
        if self.chance(0.75):
            toks.append((".", "PUNCT"))
        if toks and self.chance(0.85):
            w, t = toks[0]
            if t != "PROPN":
                toks[0] = (w[0].upper() + w[1:], t)
        return toks

    def sentence(self):
        k = self.r.randrange(19)
        if k == 0:  # NP VING ...
            subj, _ = self.np(allow_pp=False)
            return self.finish(subj + self.vp_ing())
        if k == 1:  # NP AUX VING ...
            subj, pl = self.np(allow_pp=self.chance(0.2))
            aux = "are" if pl else "is"
            if self.chance(0.1):
                aux = "were" if pl else "was"
            mid = [(aux, "AUX")]
            if self.chance(0.07):
                mid.append(("not", "PART"))
            return self.finish(subj + mid + self.vp_ing())
        if k == 2:  # NP AUX ADJ / PP
            subj, pl = self.np(allow_pp=False)
            toks = subj + [("are" if pl else "is", "AUX")]
            if self.chance(0.5):
                if self.chance(0.2):
                    toks.append(("very", "ADV"))
                toks.append((self.pick(ADJS[:60]), "ADJ"))
                if self.chance(0.2):
                    toks += [("and", "CONJ"), (self.pick(ADJS[:60]), "ADJ")]
            else:
                toks += self.pp()
            return self.finish(toks)
        if k == 3:  # NP V3sg ...
            subj, _ = self.np(plural=False, allow_pp=False)
            _, v3, trans = self.pick(VERBS)
            toks = subj + [(v3, "VERB")]
            if trans and self.chance(0.7):
                toks += self.object_np()
            toks += self.predicate_tail()
            return self.finish(toks)
        if k == 17:  # plural NP, base-form verb
            subj, _ = self.np(plural=True, allow_pp=False)
            _, v3, trans = self.pick(VERBS)
            toks = subj + [(base_form(v3), "VERB")]
            if trans and self.chance(0.6):
                toks += self.object_np()
            toks += self.predicate_tail()
            return self.finish(toks)
        if k == 18:  # bare verb or imperative
            _, v3, trans = self.pick(VERBS)
            toks = [(base_form(v3), "VERB")]
            if trans and self.chance(0.5):
                toks += self.object_np()
            elif self.chance(0.4):
                toks += self.predicate_tail()
            return self.finish(toks)
        if k == 4:  # There is/are
            obj, pl = self.np(allow_pp=False)
            toks = [("there", "PRON"), ("are" if pl else "is", "AUX")] + obj
            if self.chance(0.4):
                toks += self.vp_ing()
            else:
                toks += self.pp()
            return self.finish(toks)
        if k == 5:  # fragment NP PP
            subj, _ = self.np(allow_pp=False)
            return self.finish(subj + self.pp() + (self.pp() if self.chance(0.3) else []))
        if k == 6:  # NP VPAST PP
            subj, _ = self.np(allow_pp=False)
            toks = subj + [(self.pick(PARTICIPLES), "VERB")]
            if self.chance(0.5):
                toks += [("with", "ADP")] + self.np(allow_pp=False)[0]
            else:
                toks += self.pp()
            return self.finish(toks)
        if k == 7:  # NP and NP VING
            a, _ = self.np(allow_pp=False)
            b, _ = self.np(allow_pp=False)
            return self.finish(a + [("and", "CONJ")] + b + self.vp_ing())
        if k == 8:  # view / picture of
            head = self.pick(["view", "picture", "photo", "image", "shot",
                              "photograph", "couple", "group", "bunch", "pile", "row",
                              "plate", "bowl", "slice", "piece", "box"])
            toks = [(self.pick(["a", "the"]), "DET")]
            if self.chance(0.3):
                toks.append((self.pick(ADJ_BEFORE_NOUN), "ADJ"))
            toks.append((head, "NOUN"))
            toks += [("of", "ADP")] + self.np(allow_det=self.chance(0.6))[0]
            if self.chance(0.4):
                toks += self.vp_ing() if self.chance(0.5) else self.pp()
            return self.finish(toks)
        if k == 9:  # pronoun subject
            pro, aux = self.pick(SUBJ_PRONOUNS)
            return self.finish([(pro, "PRON"), (aux, "AUX")] + self.vp_ing())
        if k == 10:  # relative clause
            subj, pl = self.np(allow_pp=False)
            toks = subj + [(self.pick(["who", "that", "which"]), "PRON"),
                           ("are" if pl else "is", "AUX")]
            if self.chance(0.2):
                toks.append(("not", "PART"))
            toks += self.vp_ing_simple()
            toks += self.pp()
            return self.finish(toks)
        if k == 11:  # kitchen with a, b and c
            subj, _ = self.np(allow_pp=False)
            toks = subj + [("with", "ADP")]
            items = [self.np(allow_pp=False)[0] for _ in range(self.r.randint(2, 3))]
            for i, it in enumerate(items):
                if i > 0:
                    if i == len(items) - 1:
                        if self.chance(0.4):
                            toks.append((",", "PUNCT"))
                        toks.append(("and", "CONJ"))
                    else:
                        toks.append((",", "PUNCT"))
                toks += it
            return self.finish(toks)
        if k == 12:  # commas between clauses
            subj, _ = self.np(allow_pp=False)
            return self.finish(subj + [(",", "PUNCT")] + self.vp_ing())
        if k == 13:  # proper subject
            toks = self.proper_np()
            if self.chance(0.5):
                toks += self.vp_ing()
            else:
                toks += self.pp()
            return self.finish(toks)
        if k == 14:  # possessive 's
            owner, _ = self.np(plural=False, allow_pp=False)
            toks = owner + [("'s", "PART")]
            toks += [(self.pick(ADJ_BEFORE_NOUN), "ADJ")] if self.chance(0.3) else []
            toks.append((self.noun_head(False)[0], "NOUN"))
            toks += self.pp()
            return self.finish(toks)
        if k == 15:  # adverb modified predicates
            subj, pl = self.np(allow_pp=False)
            toks = subj + [("are" if pl else "is", "AUX")]
            toks += [(self.pick(["very", "really", "so", "too", "quite"]), "ADV"),
                     (self.pick(ADJS[:60]), "ADJ")]
            return self.finish(toks)
        # k == 16: numbered subject, number word variants
        n = self.pick(sorted(NUMS))
        head, _, _ = self.noun_head(True)
        toks = [(n, "NUM")]
        if self.chance(0.4):
            toks.append((self.pick(ADJ_BEFORE_NOUN), "ADJ"))
        toks.append((head, "NOUN"))
        return self.finish(toks + self.vp_ing())


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sentences", type=int, default=6000)
    ap.add_argument("--seed", type=int, default=20260417)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    g = Gen(random.Random(args.seed))
    with open(args.out, "w", encoding="utf-8") as f:
        f.write("# Generated by scripts/gen_tagger_corpus.py --seed %d --sentences %d\n\n"
                % (args.seed, args.sentences))
        for _ in range(args.sentences):
            for w, t in g.sentence():
                f.write("%s\t%s\n" % (w, t))
            f.write("\n")


if __name__ == "__main__":
    main()
