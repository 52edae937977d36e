"""JSON forms of diagrams, linear combinations and bar elements.

A combination is ``{"species": ..., "terms": [{"coeff": "p/q", ...}]}``
where each term carries either a ``diagram`` (braid or link species) or a
``word`` (a list of braid diagrams, for bar elements; ``factors`` is
accepted as a synonym).  Orientations inside
the diagrams are read with the parity of the side they live on.
"""

from fractions import Fraction

from .diagram import (Parity, canonicalize, canonicalize_link, diagram_from_key,
                      diagram_to_json, link_from_key, link_to_json,
                      validate_diagram, validate_link_diagram)
from .errors import MalformedOrientation


def _coeff(raw):
    try:
        return Fraction(str(raw))
    except (ValueError, ZeroDivisionError):
        raise MalformedOrientation(f"bad coefficient {raw!r}") from None


def braid_key_from_json(raw, parity):
    sk = canonicalize(validate_diagram(raw), parity)
    return sk.key, sk.sign


def link_key_from_json(raw, parity):
    sk = canonicalize_link(validate_link_diagram(raw), parity)
    return sk.key, sk.sign


def key_to_json(key, parity):
    if key[0] == "braid":
        return diagram_to_json(diagram_from_key(key), parity)
    return link_to_json(link_from_key(key), parity)


def element_to_json(x, species, parity):
    """``parity`` is the orientation parity of the diagrams in ``x``."""
    terms = []
    for k, c in x.items():
        if species == "bar":
            terms.append({"coeff": str(c), "word": [key_to_json(f, parity) for f in k]})
        else:
            terms.append({"coeff": str(c), "diagram": key_to_json(k, parity)})
    return {"species": species, "parity": Parity.parse(parity).name.lower(),
            "terms": terms}


def element_from_json(raw, braid_parity):
    """Parse one element; returns ``(species, combination)``.

    Accepts a bare diagram, a combination, or a bar element.  Link diagrams
    are read with the flipped parity.
    """
    braid_parity = Parity.parse(braid_parity)
    link_parity = braid_parity.flip()
    if "terms" not in raw:
        if raw.get("species") == "link":
            k, s = link_key_from_json(raw, link_parity)
            return "link", ({k: Fraction(s)} if s else {})
        k, s = braid_key_from_json(raw, braid_parity)
        return "braid", ({k: Fraction(s)} if s else {})
    species = raw.get("species")
    out = {}
    for t in raw["terms"]:
        c = _coeff(t.get("coeff", 1))
        word = t.get("word", t.get("factors"))
        if word is not None:
            species = "bar"
            sign, keys = 1, []
            for f in word:
                k, s = braid_key_from_json(f, braid_parity)
                sign *= s
                keys.append(k)
            key = tuple(keys)
        elif "diagram" in t:
            d = t["diagram"]
            if d.get("species") == "link":
                species = "link"
                key, sign = link_key_from_json(d, link_parity)
            else:
                species = species if species == "bar" else "braid"
                key, sign = braid_key_from_json(d, braid_parity)
                if species == "bar":
                    key = (key,)
        else:
            raise MalformedOrientation("a term needs a 'word' or a 'diagram'")
        if sign:
            out[key] = out.get(key, 0) + c * sign
            if not out[key]:
                del out[key]
    return species or "braid", out


def elements_from_json(raw, braid_parity):
    """Parse a file's content: one element, a list, or an enumeration dump."""
    if isinstance(raw, list):
        return [element_from_json(r, braid_parity) for r in raw]
    if "basis" in raw:
        return [element_from_json(r, braid_parity) for r in raw["basis"]]
    return [element_from_json(raw, braid_parity)]
