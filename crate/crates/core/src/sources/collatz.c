unsigned collatz(unsigned x)
{
    if (x % 2 == 0)
        return x / 2;
    return 3 * x + 1;
}
