'''
General utilities.
'''

import hashlib
import json
import logging

import numpy as np

logger = logging.getLogger(__name__)


def bisect(func, lb, ub, xtol=1e-9, max_iter=200):
    """Find the root of a monotone function by bisection.

    Parameters
    ----------
    func : callable
        scalar function of one variable; `func(lb)` and `func(ub)` must not
        share a sign.
    lb : float
        lower bound of the bracket.
    ub : float
        upper bound of the bracket.
    xtol : float, optional
        stop once the bracket is narrower than this, by default 1e-9
    max_iter : int, optional
        hard limit on the number of halvings, by default 200

    Returns
    -------
    float
        the midpoint of the final bracket, within xtol/2 of the root.

    Raises
    ------
    ValueError
        the root is not bracketed by [lb, ub].
    """
    f_lb = func(lb)
    f_ub = func(ub)
    if f_lb == 0:
        return lb
    if f_ub == 0:
        return ub
    if np.sign(f_lb) == np.sign(f_ub):
        raise ValueError(f'root is not bracketed by [{lb}, {ub}]')

    n_iter = 0
    while n_iter < max_iter:
        mid = 0.5 * (lb + ub)
        # stop when the bracket is tight or float resolution is exhausted
        if ub - lb <= xtol or mid in (lb, ub):
            break
        f_mid = func(mid)
        if f_mid == 0:
            return mid
        if np.sign(f_mid) == np.sign(f_lb):
            lb, f_lb = mid, f_mid
        else:
            ub = mid
        n_iter += 1

    logger.debug('bisection stopped after %d iterations, bracket [%r, %r]', n_iter, lb, ub)
    return 0.5 * (lb + ub)


def digest(document, length=12):
    """Short, stable hash of a JSON-serialisable document.

    Parameters
    ----------
    document : dict
        content to be hashed (keys are sorted before hashing).
    length : int, optional
        number of hex characters kept, by default 12

    Returns
    -------
    str
        hex digest prefix.
    """
    text = json.dumps(document, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()[:length]


def mkfile(content, fname='tmp'):
    """Make a file with content.

    Parameters
    ----------
    content : str list OR a str
        content of the file. A str is written as it is; a list is written one
        item per line.
    fname : str, optional
        file name, by default 'tmp'
    """

    # make sure content is a single str
    if not isinstance(content, str):
        content = ''.join(line + '\n' for line in content)

    # write to file (always '\n' line endings, utf-8)
    with open(fname, 'w', encoding='utf-8', newline='\n') as f:
        f.write(content)
