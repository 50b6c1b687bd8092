"""
Challenge cards: one ladder rung (k, p, n, r, G, Q, d) and its JSON form.
"""

import json
import os
from dataclasses import dataclass, replace
from typing import Optional

from src.ec_core.curve import CurvePoint, scalar_mul
from src.ec_core.field import to_hex, from_hex
from src.utils.config import PACKAGE_DATA_DIR
from src.utils.errors import CardFormatError

CARD_FIELDS = ('k', 'p', 'n', 'r', 'Gx', 'Gy', 'Qx', 'Qy', 'd')
APPENDIX_CARDS_FILE = 'appendix_cards.json'


@dataclass(frozen=True)
class ChallengeCard:
    """
    A challenge instance on y^2 = x^3 + 7.

    Attributes:
        k (int): Target bit-length
        p (int): k-bit field prime
        n (int): Group order
        r (int): Embedding degree, None when unverified or not recorded
        G (CurvePoint): Generator
        Q (CurvePoint): Public key
        d (int): Secret scalar, None when unknown
    """
    k: int
    p: int
    n: int
    r: Optional[int]
    G: CurvePoint
    Q: CurvePoint
    d: Optional[int] = None

    def to_dict(self):
        """Card JSON object with uppercase hex values."""
        return {
            'k': self.k,
            'p': to_hex(self.p),
            'n': to_hex(self.n),
            'r': None if self.r is None else to_hex(self.r),
            'Gx': to_hex(self.G.x.value),
            'Gy': to_hex(self.G.y.value),
            'Qx': to_hex(self.Q.x.value),
            'Qy': to_hex(self.Q.y.value),
            'd': None if self.d is None else to_hex(self.d),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data):
        """
        Parse a card JSON object.

        Args:
            data (dict): Object following the card schema

        Returns:
            ChallengeCard: Parsed card
        """
        if not isinstance(data, dict):
            raise CardFormatError(f"card must be a JSON object, got {type(data).__name__}")
        missing = [name for name in CARD_FIELDS if name not in data]
        if missing:
            raise CardFormatError(f"card is missing fields: {', '.join(missing)}")
        try:
            k = int(data['k'])
            p = from_hex(data['p'])
            n = from_hex(data['n'])
            r = None if data['r'] is None else from_hex(data['r'])
            d = None if data['d'] is None else from_hex(data['d'])
            coords = [from_hex(data[name]) for name in ('Gx', 'Gy', 'Qx', 'Qy')]
        except (TypeError, ValueError) as e:
            raise CardFormatError(f"malformed card: {e}") from e
        if p < 5:
            raise CardFormatError(f"field prime too small: {to_hex(p)}")
        if any(value >= p for value in coords):
            raise CardFormatError("coordinate not reduced modulo p")
        G = CurvePoint.from_ints(coords[0], coords[1], p)
        Q = CurvePoint.from_ints(coords[2], coords[3], p)
        return cls(k=k, p=p, n=n, r=r, G=G, Q=Q, d=d)


def plant_secret(card, d):
    """
    Attach a known secret and the matching public key.

    Args:
        card (ChallengeCard): Card supplying (p, n, G)
        d (int): Secret in [1, n - 1]

    Returns:
        ChallengeCard: Copy with d set and Q = [d]G
    """
    if not 1 <= d < card.n:
        raise ValueError(f"secret {to_hex(d)} outside [1, n - 1]")
    return replace(card, d=d, Q=scalar_mul(d, card.G))


def load_card(path):
    """Read one card from a JSON file."""
    try:
        with open(path, 'r') as file:
            data = json.load(file)
    except json.JSONDecodeError as e:
        raise CardFormatError(f"{path}: invalid JSON ({e})") from e
    return ChallengeCard.from_dict(data)


def save_card(card, path):
    """Write one card as JSON."""
    with open(path, 'w') as file:
        file.write(card.to_json())


def load_appendix_cards(path=None):
    """
    The twenty published ladder cards, 6 to 256 bits.

    Args:
        path (str): Alternative cards file

    Returns:
        list: ChallengeCard objects in ladder order
    """
    path = path or os.path.join(PACKAGE_DATA_DIR, APPENDIX_CARDS_FILE)
    with open(path, 'r') as file:
        entries = json.load(file)
    return [ChallengeCard.from_dict(entry) for entry in entries]


def appendix_card(k, path=None):
    """The published card for bit-length k."""
    for card in load_appendix_cards(path):
        if card.k == k:
            return card
    raise KeyError(f"no published card for k={k}")
