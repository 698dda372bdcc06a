class A { void f(){ if (x > 0) y = 1; } }
