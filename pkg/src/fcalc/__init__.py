"""fcalc: exact calculus for truncated functors on finite sets and injections.

Subpackages and modules:

* ``exactlin``  -- matrices, Smith normal form, presented modules
* ``fimod``     -- truncated FI-modules and the difference calculus
* ``fisharp``   -- FI#-modules, idempotents, cross-effects, Dold-Kan, alpha
* ``cattilde``  -- the hom-set nullification of Theta and Sigma, concretely
* ``corpus``    -- worked-example constructors with machine-checked oracles
* ``cli``       -- the ``fcalc`` command line front end
"""

__version__ = "0.1.0"
