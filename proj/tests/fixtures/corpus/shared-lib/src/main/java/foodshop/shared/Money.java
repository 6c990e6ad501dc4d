package foodshop.shared;

public class Money {
    private long cents;
}
